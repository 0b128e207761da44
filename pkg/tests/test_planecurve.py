import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import brentq

from caustica.jetcore import PolyGerm, evaluate, partial
from caustica.planecurve import (OFFDIAGONAL, SHELL, CausticBranch, CurveSamples, OpenCurveError,
                                 chord_polynomials, chord_scan, chords_to_csv,
                                 classify_curve_point, cusp_count, midpoint_locus,
                                 offdiagonal_roots, onshell_trace, tangency_report)


def S1(text):
    return PolyGerm.parse(text, 1, gens=["q"])


@pytest.fixture(scope="module")
def quartic_quintic():
    S = S1("q^4 + q^5")
    return S, onshell_trace(S, (-0.05, 0.05), resolution=401, beta_max=0.5)


def test_trace_matches_elimination(quartic_quintic):
    S, branches = quartic_quintic
    assert [b.branch_kind for b in branches] == [SHELL, OFFDIAGONAL]
    br = branches[1]
    q = br.q
    np.testing.assert_allclose(br.beta_values ** 2, -6 * q / 5 - 3 * q ** 2, rtol=1e-9)
    assert np.all(q < 0)


def test_shell_branch_lies_on_the_curve(quartic_quintic):
    S, branches = quartic_quintic
    sh = branches[0]
    np.testing.assert_allclose(sh.p, 4 * sh.q ** 3 + 5 * sh.q ** 4, atol=1e-15)
    assert np.all(sh.beta_values == 0)


def test_offdiagonal_points_solve_both_equations(quartic_quintic):
    S, branches = quartic_quintic
    d1 = partial(S.to_float(), 0)
    d2 = partial(S.to_float(), 0, 2)
    br = branches[1]
    for (p, q), b in zip(br.points, br.beta_values):
        assert b != 0
        assert abs(evaluate(d2, (q + b,)) - evaluate(d2, (q - b,))) < 1e-9
        assert p == pytest.approx(0.5 * (evaluate(d1, (q + b,)) + evaluate(d1, (q - b,))), abs=1e-14)


def test_tangency_of_the_half_branch(quartic_quintic):
    S, branches = quartic_quintic
    t = branches[1].tangency
    assert t.one_sided and t.side == "left" and t.tangent
    assert t.contact_point == pytest.approx((0.0, 0.0), abs=1e-9)
    assert t.quadratic_coeff == pytest.approx(-36 / 5, rel=1e-2)


def test_model_family_half_parabola_has_the_same_shape():
    # caustic of b^5 + q b^3 + p b: 5b^4 + 3q b^2 + p = 0 and 20b^3 + 6q b = 0
    q = np.linspace(-0.05, -1e-4, 200)
    b = np.sqrt(-3 * q / 10)
    p = -5 * b ** 4 - 3 * q * b ** 2
    np.testing.assert_allclose(p, 9 * q ** 2 / 20, rtol=1e-12)
    br = CausticBranch(np.column_stack([p, q]), b, OFFDIAGONAL)
    t = tangency_report(br, PolyGerm.zero(1))
    assert t.one_sided and t.side == "left" and t.tangent
    assert t.quadratic_coeff == pytest.approx(9 / 20, rel=1e-6)


def test_tangency_errors(quartic_quintic):
    S, branches = quartic_quintic
    with pytest.raises(ValueError):
        tangency_report(branches[0], S)
    short = CausticBranch(branches[1].points[:3], branches[1].beta_values[:3], OFFDIAGONAL)
    with pytest.raises(ValueError, match="insufficient"):
        tangency_report(short, S)


@pytest.mark.parametrize("text", ["q^3", "q^3 + q^4"])
def test_shell_only(text):
    branches = onshell_trace(S1(text), (-0.05, 0.05), resolution=101)
    assert len(branches) == 1 and branches[0].branch_kind == SHELL


def test_roots_symmetric_in_beta():
    E, _ = chord_polynomials(S1("q^4 + q^5 + q^6"))
    roots, fails = offdiagonal_roots(E, -0.02, 0.5)
    assert not fails and roots
    np.testing.assert_allclose(sorted(roots), sorted(-r for r in roots))


def test_trace_validation():
    with pytest.raises(ValueError):
        onshell_trace(S1("q^4"), (0.1, 0.2))
    with pytest.raises(ValueError):
        onshell_trace(S1("q^2"), (-1, 1))
    with pytest.raises(ValueError):
        onshell_trace(PolyGerm.parse("x^3+y^3", 2, gens=["x", "y"]), (-1, 1))


def test_classify_curve_point():
    assert classify_curve_point(S1("q^3")) == "A_{2/2}-ordinary"
    assert classify_curve_point(S1("q^4 + q^5")) == "A_{4/2}-inflection"
    assert classify_curve_point(S1("q^5")) == "unstable"
    assert classify_curve_point(S1("q^4")) == "unstable"
    assert classify_curve_point(S1("(q-1)^4 + (q-1)^5"), 1) == "A_{4/2}-inflection"
    assert classify_curve_point(S1("q^4 + q^5").to_float()) == "A_{4/2}-inflection"


# -- sampled curves ---------------------------------------------------------------

def ellipse(n, a=2.0, b=0.5, c=(0.0, 0.0)):
    return CurveSamples.from_function(lambda t: (c[0] + a * np.cos(t), c[1] + b * np.sin(t)), n)


def test_ellipse_midpoints_at_center():
    c = ellipse(512, c=(1.0, -3.0))
    pairs = chord_scan(c)
    assert len(pairs) == 256
    m = midpoint_locus(pairs)
    assert np.abs(m - [1.0, -3.0]).max() < 1e-9
    rep = cusp_count(m, scale=c.scale)
    assert rep.count == 0 and rep.degenerate


def test_chord_pair_invariants():
    c = CurveSamples.from_function(lambda t: (np.cos(t) + 0.1 * np.cos(2 * t), 2 * np.sin(t)), 256)
    for pr in chord_scan(c, angle_tol=1e-3):
        assert pr.index_a < pr.t_b and pr.angle_mismatch <= 1e-3
        assert pr.index_b == int(round(pr.t_b)) % len(c)


@settings(max_examples=10, deadline=None)
@given(st.floats(0.0, 0.1), st.floats(-0.05, 0.05), st.floats(-5, 5), st.floats(-5, 5))
def test_central_symmetry_collapse(r3, s3, cx, cy):
    # odd harmonics only, kept convex: gamma(t + pi) = 2c - gamma(t)
    fn = lambda t: (cx + np.cos(t) + s3 * np.cos(3 * t), cy + 1.5 * np.sin(t) + r3 * np.sin(3 * t))
    c = CurveSamples.from_function(fn, 256)
    m = midpoint_locus(chord_scan(c))
    assert len(m) and np.abs(m - [cx, cy]).max() <= 1e-6 * c.scale


def test_affine_symplectic_equivariance():
    fn = lambda t: (np.cos(t) + 0.1 * np.cos(2 * t), 2 * np.sin(t))
    c = CurveSamples.from_function(fn, 512)
    A = np.array([[2.0, 1.0], [1.0, 1.0]])  # det 1
    shift = np.array([0.5, -2.0])
    moved = CurveSamples(c.samples @ A.T + shift)
    a = chord_scan(c)
    b = chord_scan(moved)
    assert [(p.index_a, p.index_b) for p in a] == [(p.index_a, p.index_b) for p in b]
    ma = np.array([p.midpoint for p in a]) @ A.T + shift
    mb = np.array([p.midpoint for p in b])
    assert np.abs(ma - mb).max() < 1e-9 * np.linalg.norm(A, 2)


def oracle_cusps(d1, d2, m=600):
    """Cusp count from radii of curvature at the two ends of each parallel chord."""
    def rho(t):
        v, w = d1(t), d2(t)
        return (v[0] ** 2 + v[1] ** 2) ** 1.5 / (v[0] * w[1] - v[1] * w[0])
    diffs = []
    for a in np.linspace(0, 2 * np.pi, m, endpoint=False):
        va = d1(a)
        cross = lambda t: va[0] * d1(t)[1] - va[1] * d1(t)[0]
        grid = a + np.linspace(0.05, 2 * np.pi - 0.05, 300)
        c = cross(grid)
        roots = [brentq(cross, grid[i], grid[i + 1]) for i in np.flatnonzero(c[:-1] * c[1:] < 0)]
        b = next(t for t in roots if np.dot(d1(t), va) < 0)
        diffs.append(rho(a) - rho(b))
    d = np.array(diffs)
    return int(np.sum(d * np.roll(d, -1) < 0)) // 2


OVALS = {
    "perturbed ellipse": (
        lambda t: (np.cos(t) + 0.1 * np.cos(2 * t), 2 * np.sin(t)),
        lambda t: np.array([-np.sin(t) - 0.2 * np.sin(2 * t), 2 * np.cos(t)]),
        lambda t: np.array([-np.cos(t) - 0.4 * np.cos(2 * t), -2 * np.sin(t)])),
    "two flattenings": (
        lambda t: (np.cos(t) + 0.04 * np.cos(4 * t) + 0.05 * np.cos(2 * t),
                   1.3 * np.sin(t) + 0.03 * np.sin(2 * t)),
        lambda t: np.array([-np.sin(t) - 0.16 * np.sin(4 * t) - 0.1 * np.sin(2 * t),
                            1.3 * np.cos(t) + 0.06 * np.cos(2 * t)]),
        lambda t: np.array([-np.cos(t) - 0.64 * np.cos(4 * t) - 0.2 * np.cos(2 * t),
                            -1.3 * np.sin(t) - 0.12 * np.sin(2 * t)])),
}


@pytest.mark.parametrize("name", list(OVALS))
def test_cusps_match_curvature_oracle(name):
    fn, d1, d2 = OVALS[name]
    expected = oracle_cusps(d1, d2)
    assert expected % 2 == 1
    for n in (2048, 4096):
        c = CurveSamples.from_function(fn, n)
        rep = cusp_count(midpoint_locus(chord_scan(c)), scale=c.scale)
        assert (rep.count, rep.confidence) == (expected, "high")


def test_csv_round_trip_and_errors():
    c = ellipse(64)
    back = CurveSamples.from_csv(c.to_csv())
    np.testing.assert_array_equal(back.samples, c.samples)
    with pytest.raises(OpenCurveError):
        CurveSamples.from_csv("theta,p,q\n0,1,0\n1,0,1\n2,-1,0\n3,0,-1\n")
    with pytest.raises(ValueError, match="header"):
        CurveSamples.from_csv("t,x,y\n0,1,0\n")
    text = chords_to_csv(chord_scan(ellipse(32)))
    assert text.splitlines()[0] == "i,j,mid_p,mid_q,mismatch"


def test_too_few_samples_for_scan():
    with pytest.raises(ValueError):
        chord_scan(ellipse(8))


def test_nonsmooth_polyline_flagged():
    corners = np.array([(1, 0), (1, 1), (-1, 1), (-1, -1), (1, -1), (1, 0)], float)
    pts = []
    for a, b in zip(corners[:-1], corners[1:]):
        for s in np.linspace(0, 1, 10, endpoint=False):
            pts.append(a + (b - a) * s)
    pts.append(pts[0])
    assert not CurveSamples(np.array(pts)).is_smooth()
    assert ellipse(128).is_smooth()


def test_cusp_count_degenerate_point_cloud():
    rep = cusp_count(np.zeros((50, 2)) + 3.0, scale=1.0)
    assert rep.degenerate and rep.count == 0
