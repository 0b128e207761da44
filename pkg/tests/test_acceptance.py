"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -s`` or
``python tests/test_acceptance.py``.
"""

import time
from fractions import Fraction as F

import numpy as np
import pytest

from caustica.jetcore import (PolyGerm, compose_linear, compose_odd_diffeo, monomial_basis,
                              parity_split, random_rational_germ)
from caustica.lagsurface import (classify_surface_point, delta_L, onshell_slice,
                                 surface_invariants)
from caustica.oddclass import (Kind, classify, classify_odd_2d, cubic_discriminant, is_versal,
                               normal_form, standard_deformation_directions, realization_check)
from caustica.planecurve import (OFFDIAGONAL, CurveSamples, chord_scan, cusp_count,
                                 midpoint_locus, onshell_trace)

NORMAL_FORMS = [
    (Kind.A, 1, "A_{2/2}", 1), (Kind.A, 2, "A_{4/2}", 2), (Kind.A, 3, "A_{6/2}", 3),
    (Kind.DPLUS, 2, "D+_{4/2}", 2), (Kind.DMINUS, 2, "D-_{4/2}", 2),
    (Kind.DPLUS, 3, "D+_{6/2}", 3), (Kind.DMINUS, 3, "D-_{6/2}", 3),
    (Kind.E8, None, "E_{8/2}", 4), (Kind.J10PLUS, None, "J10+_{10/2}", 5),
    (Kind.J10MINUS, None, "J10-_{10/2}", 5), (Kind.E12, None, "E_{12/2}", 6),
]


def P2(text):
    return PolyGerm.parse(text, 2, gens=["q1", "q2"])


def run(log, number, title, budget, body):
    t0 = time.perf_counter()
    status, detail = "PASS", ""
    try:
        detail = body() or ""
        elapsed = time.perf_counter() - t0
        if elapsed >= budget:
            status, detail = "FAIL", f"over time budget {budget}s"
    except AssertionError as exc:
        status, detail = "FAIL", str(exc).splitlines()[0] if str(exc) else "assertion failed"
        elapsed = time.perf_counter() - t0
    line = f"criterion {number}: {status} {title} [{elapsed:.2f}s / {budget}s] {detail}".rstrip()
    log.append(line)
    print(line)
    assert status == "PASS", line


def rq(rng, bound=5):
    return F(int(rng.integers(-bound, bound + 1)), int(rng.integers(1, bound + 1)))


def nonzero_rational(rng):
    while True:
        v = rq(rng)
        if v:
            return v


def random_invertible(rng):
    while True:
        m = [[rq(rng) for _ in range(2)] for _ in range(2)]
        if m[0][0] * m[1][1] - m[0][1] * m[1][0] != 0:
            return m


def random_near_identity(rng, n, order=11):
    comps = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        c = {tuple(e): 1}
        for m in monomial_basis(n, "odd", 3, 5):
            if rng.random() < 0.5:
                c[m] = rq(rng, 3)
        comps.append(PolyGerm(n, order, c))
    return comps


def test_criterion_1_normal_forms(acceptance_log):
    def body():
        for kind, k, label, codim in NORMAL_FORMS:
            res = classify(normal_form(kind, k))
            assert res.label == label, f"{label} classified as {res.label}"
            assert res.odd_codimension == codim, f"{label}: codim {res.odd_codimension}"
        return f"{len(NORMAL_FORMS)} forms"
    run(acceptance_log, 1, "normal forms classify to their labels and codimensions", 1.0, body)


def test_criterion_2_equivalence_invariance(acceptance_log):
    def body():
        rng = np.random.default_rng(20240601)
        checked = 0
        for kind, k, label, _ in NORMAL_FORMS:
            f = normal_form(kind, k)
            for _ in range(200):
                if f.num_vars == 2:
                    g = compose_linear(f, random_invertible(rng))
                else:
                    g = compose_odd_diffeo(f, [PolyGerm(1, 11, {(1,): nonzero_rational(rng)})])
                assert classify(g).label == label, f"linear pullback of {label}: {classify(g).label}"
                h = compose_odd_diffeo(f, random_near_identity(rng, f.num_vars))
                assert classify(h).label == label, f"diffeo pullback of {label}: {classify(h).label}"
                checked += 2
        return f"{checked} pullbacks"
    run(acceptance_log, 2, "random linear and odd-diffeo pullbacks reclassify identically", 30.0, body)


def test_criterion_3_miniversality(acceptance_log):
    def body():
        count = 0
        for kind, k, label, _ in NORMAL_FORMS:
            f = normal_form(kind, k)
            dirs = standard_deformation_directions(kind, k)
            assert is_versal(f, dirs).verdict == "versal", f"{label} not versal"
            for i in range(len(dirs)):
                rest = dirs[:i] + dirs[i + 1:]
                v = is_versal(f, rest).verdict
                assert v == "not_versal", f"{label} without {dirs[i]} gives {v}"
                count += 1
        return f"{count} deletions"
    run(acceptance_log, 3, "listed directions versal, every single deletion not versal", 5.0, body)


def test_criterion_4_discriminant_identity(acceptance_log):
    def body():
        rng = np.random.default_rng(7)
        for _ in range(1000):
            s = [rq(rng, 9) for _ in range(4)]
            assert delta_L(*s) == -16 * cubic_discriminant(*s), f"identity fails at {s}"
        for n in range(1000):
            a, b, c, d = (rq(rng, 6) for _ in range(4))
            if a == b == 0:
                a = F(1)
            if n % 2:  # double factor (a x + b y)^2 (c x + d y)
                coeffs = _expand([(a, b), (a, b), (c, d)])
            else:  # triple factor
                coeffs = _expand([(a, b), (a, b), (a, b)])
            s30, s21, s12, s03 = 6 * coeffs[0], 2 * coeffs[1], 2 * coeffs[2], 6 * coeffs[3]
            assert cubic_discriminant(s30, s21, s12, s03) == 0
            assert s30 * s12 - s21 ** 2 <= 0 and s03 * s21 - s12 ** 2 <= 0, f"sign inequality fails at {coeffs}"
        return "1000 + 1000 cubics"
    run(acceptance_log, 4, "Delta_L = -16 Delta exactly; repeated-root quadratic forms <= 0", 60.0, body)


def _expand(factors):
    # coefficients of x^3, x^2 y, x y^2, y^3 in a product of three linear forms
    poly = {(0, 0): F(1)}
    for a, b in factors:
        new = {}
        for (i, j), c in poly.items():
            new[i + 1, j] = new.get((i + 1, j), 0) + c * a
            new[i, j + 1] = new.get((i, j + 1), 0) + c * b
        poly = new
    return [poly.get((3 - j, j), F(0)) for j in range(4)]


def test_criterion_5_realization_gate(acceptance_log):
    def body():
        b = lambda s: PolyGerm.parse(s, 2, gens=["b1", "b2"])
        accept = [
            (Kind.DPLUS, 3, ["0", "b2^3"]), (Kind.DMINUS, 3, ["0", "b2^3"]),
            (Kind.DPLUS, 4, ["b2^3", "b2^5 + 3*b1*b2^2"]),
            (Kind.DMINUS, 4, ["b2^3", "b2^5 + 3*b1*b2^2"]),
            (Kind.E8, None, ["b2^3", "3*b1*b2^2"]),
        ]
        for kind, k, h in accept:
            r = realization_check(normal_form(kind, k), [b(s) for s in h])
            assert r.ok, f"{kind.value}{k}: rejected ({r.reason})"
        # every pair of cubic directions (each h_i a single odd cubic monomial) fails
        cubics = [PolyGerm(2, 11, {m: 1}) for m in monomial_basis(2, "odd", 3, 3)]
        attempts = 0
        for kind in (Kind.J10PLUS, Kind.J10MINUS, Kind.E12):
            f = normal_form(kind)
            for h1 in cubics + [b("b2^3 + b2^5")]:
                for h2 in cubics + [b("3*b1*b2^2 + b1^3")]:
                    r = realization_check(f, [h1, h2])
                    assert not r.versal, f"{kind.value} accepted with {h1}, {h2}"
                    attempts += 1
        return f"{len(accept)} accepted, {attempts} rejected"
    run(acceptance_log, 5, "realization witnesses accepted, J10/E12 rejected", 5.0, body)


def test_criterion_6_curve_tracer(acceptance_log):
    def body():
        S = PolyGerm.parse("q^4 + q^5", 1, gens=["q"])
        branches = onshell_trace(S, (-0.05, 0.05), resolution=1001, beta_max=0.5)
        off = [br for br in branches if br.branch_kind == OFFDIAGONAL]
        assert len(off) == 1, f"expected one off-diagonal branch, got {len(off)}"
        br = off[0]
        q, b = br.q, br.beta_values
        assert np.all(q < 0), "branch leaks to q >= 0"
        assert q.min() <= -0.05 + 1e-12 and q.max() > -1e-3, "branch does not cover [-0.05, 0)"
        b2 = -6 * q / 5 - 3 * q ** 2
        err_b = float(np.max(np.abs(b ** 2 - b2) / b2))
        beta = np.sqrt(b2)
        dS = lambda x: 4 * x ** 3 + 5 * x ** 4
        p_oracle = 0.5 * (dS(q + beta) + dS(q - beta))
        err_p = float(np.max(np.abs(br.p - p_oracle) / np.abs(p_oracle)))
        assert err_b <= 1e-6, f"beta^2 relative error {err_b:.2e}"
        assert err_p <= 1e-6, f"p relative error {err_p:.2e}"
        t = br.tangency
        assert t is not None and t.one_sided and t.side == "left", "branch not one-sided"
        assert t.tangent, f"linear contact coefficient {t.linear_coeff:.3e}"
        assert abs(t.quadratic_coeff) > 1.0, f"quadratic contact {t.quadratic_coeff}"
        return f"max rel err beta^2 {err_b:.1e}, p {err_p:.1e}, c2 {t.quadratic_coeff:.4f}"
    run(acceptance_log, 6, "q^4+q^5 traced branch matches elimination oracle", 10.0, body)


def test_criterion_7_chord_scanner(acceptance_log):
    def body():
        ovals = {"circle": lambda t: (0.3 + np.cos(t), -1.2 + np.sin(t)),
                 "ellipse": lambda t: (2 * np.cos(t), 0.5 * np.sin(t))}
        centers = {"circle": (0.3, -1.2), "ellipse": (0.0, 0.0)}
        worst = 0.0
        for name, fn in ovals.items():
            c = CurveSamples.from_function(fn, 4096)
            m = midpoint_locus(chord_scan(c))
            assert len(m) >= 2048, f"{name}: only {len(m)} chords"
            dev = float(np.max(np.linalg.norm(m - np.array(centers[name]), axis=1))) / c.scale
            worst = max(worst, dev)
            assert dev <= 1e-6, f"{name}: midpoint spread {dev:.2e}"
        counts = []
        for n in (4096, 8192):
            c = CurveSamples.from_function(
                lambda t: (np.cos(t) + 0.1 * np.cos(2 * t), 2 * np.sin(t)), n)
            rep = cusp_count(midpoint_locus(chord_scan(c)), scale=c.scale)
            counts.append(rep.count)
            assert rep.count == 3 and not rep.degenerate, f"{n} samples: {rep.count} cusps"
        return f"spread {worst:.1e}, cusps {counts}"
    run(acceptance_log, 7, "symmetric ovals collapse, perturbed ellipse has 3 cusps", 20.0, body)


def test_criterion_8_surface_fixtures(acceptance_log):
    def body():
        r = classify_surface_point(P2("q1^2*q2 - q2^3"))
        assert (r.basic, r.label) == ("hyperbolic", "D-_{4/2}"), f"{r.basic}/{r.label}"
        r = classify_surface_point(P2("q1^2*q2 + q2^3"))
        assert (r.basic, r.label) == ("elliptic", "D+_{4/2}"), f"{r.basic}/{r.label}"
        pts = onshell_slice(P2("q1^2*q2 + q2^3"), (0, 0), chart="normal_form")
        cloud = np.array([s.p for s in pts if s.ray >= 0])
        assert len(cloud) > 100, "slice cloud too small"
        p1, p2 = cloud[:, 0], cloud[:, 1]
        resid = float(np.max(np.abs(3 * p1 ** 2 - p2 ** 2) / (3 * p1 ** 2 + p2 ** 2)))
        assert resid <= 1e-4, f"half-cone residual {resid:.2e}"
        assert np.all(p2 <= 1e-12 * np.abs(cloud).max()), "points with p2 > 0"
        r = classify_surface_point(P2("q1^2*q2 + q2^5 + q2^4/4"), check_versality=True)
        assert (r.basic, r.parabolic_subtype, r.label) == (
            "parabolic", "nondegenerate_ellipse", "D+_{6/2}"), f"{r.basic}/{r.parabolic_subtype}/{r.label}"
        r = classify_surface_point(P2("q1^3 + q2^5 + q1*q2^3"), check_versality=True)
        assert (r.basic, r.parabolic_subtype, r.label) == (
            "parabolic", "inflection_flat", "E_{8/2}"), f"{r.basic}/{r.parabolic_subtype}/{r.label}"
        return f"half-cone residual {resid:.1e} over {len(cloud)} points"
    run(acceptance_log, 8, "surface fixtures", 30.0, body)


def random_surface(rng, n):
    def lin():
        while True:
            a, b = rq(rng, 4), rq(rng, 4)
            if a or b:
                return PolyGerm(2, 11, {(1, 0): a, (0, 1): b})
    kind = n % 4
    if kind == 0:
        cubic = random_rational_germ(rng, 2, [3])
    elif kind == 1:
        l1, l2 = lin(), lin()
        cubic = l1 * l1 * l2
    elif kind == 2:
        l1 = lin()
        cubic = l1 * l1 * l1
    else:
        l1, l2 = lin(), lin()
        cubic = l1 * l1 * l2
    degrees = [4, 5, 6, 7] if n % 5 else [4, 6, 7]
    return cubic + random_rational_germ(rng, 2, degrees, density=0.4)


def test_criterion_9_cross_module(acceptance_log):
    def body():
        rng = np.random.default_rng(99)
        seen, tried = 0, 0
        labels = set()
        while seen < 500:
            tried += 1
            S = random_surface(rng, tried)
            surf = classify_surface_point(S)
            odd = classify_odd_2d(parity_split(S)[1])
            if not (surf.conclusive and odd.conclusive):
                continue
            assert surf.label == odd.label, f"{S}: surface {surf.label} vs odd {odd.label}"
            labels.add(odd.label)
            seen += 1
        return f"500 instances over {len(labels)} classes"
    run(acceptance_log, 9, "surface singularity equals odd classifier label", 60.0, body)


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q", "-s"]))
