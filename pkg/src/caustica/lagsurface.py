"""Lagrangian surfaces p = grad S(q) in R^4 and their on-shell Wigner caustics.

Jet invariants at a point, the elliptic / hyperbolic / parabolic trichotomy
with parabolic subtypes, the singularity of the chord generating family and
point clouds of the caustic slice over a fixed q.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.optimize import brentq

from .jetcore import (OddGerm, PolyGerm, binomial, derivative_value, evaluate, parity_split,
                      partial, translate)
from .oddclass import (EPS_SIGN, GermClass, Kind, VersalityReport, _jsonable, _Zero,
                       classify_odd_2d, cubic_discriminant, is_versal)
from ._workers import worker_count

BASIC = ("elliptic", "hyperbolic", "parabolic")
SUBTYPES = ("none", "nondegenerate_ellipse", "inflection_flat", "inflection_real",
            "inflection_imaginary")


def _centered(S: PolyGerm, point) -> PolyGerm:
    if S.num_vars != 2:
        raise ValueError("expected a germ in two variables")
    if point is None or all(c == 0 for c in point):
        return S
    return translate(S, point)


def derivative_table(S: PolyGerm, point=None, max_deg: int = 7) -> dict:
    """All S_{i,j} = d^(i+j) S / dq1^i dq2^j at the point for 3 <= i+j <= max_deg."""
    S = _centered(S, point)
    return {(i, d - i): derivative_value(S, (i, d - i))
            for d in range(3, max_deg + 1) for i in range(d, -1, -1)}


def _det4(m):
    # cofactor expansion keeps rationals exact
    def det(a):
        if len(a) == 1:
            return a[0][0]
        return sum((-1) ** j * a[0][j] * det([row[:j] + row[j + 1:] for row in a[1:]])
                   for j in range(len(a)) if a[0][j] != 0)
    return det(m)


def delta_L_matrix(s30, s21, s12, s03):
    z = 0 * s30
    return [[s30, 2 * s21, s12, z],
            [z, s30, 2 * s21, s12],
            [s21, 2 * s12, s03, z],
            [z, s21, 2 * s12, s03]]


def delta_L_determinant(s30, s21, s12, s03):
    """The 4x4 Sylvester determinant of the two rows of the second fundamental form.

    It equals -48 times the cubic discriminant.
    """
    return _det4(delta_L_matrix(s30, s21, s12, s03))


def delta_L(s30, s21, s12, s03):
    """Normal-curvature discriminant, normalised so that it equals -16 * delta."""
    d = delta_L_determinant(s30, s21, s12, s03)
    return d / 3 if isinstance(d, float) else Fraction(d) / 3


def gaussian_curvature(s30, s21, s12, s03):
    return s30 * s12 - s21 ** 2 + s21 * s03 - s12 ** 2


def _swap(table: dict) -> dict:
    return {(j, i): v for (i, j), v in table.items()}


def _div(a, b):
    if isinstance(a, float) or isinstance(b, float):
        return a / b
    return Fraction(a) / b


def _sigma_block(t: dict, zero) -> dict:
    """r1, r2, sigma_{0,5}, sigma_{0,7} and the reduced degree-7 invariant.

    ``t`` holds S_{i,j}. With D = S30 r1 - r2, the directions
    e1 = (-r2, -S30)/D and e2 = (r1, 1)/D put the cubic jet in the form
    (1/6) y1^2 y2, and sigma_{0,n} = D_{e2}^n S.
    """
    s30, s21, s12, s03 = t[3, 0], t[2, 1], t[1, 2], t[0, 3]
    out = {"r1": None, "r2": None, "sigma5": None, "sigma7": None, "sigma7_reduced": None,
           "reason": None}
    den = s30 * s12 - s21 ** 2
    if zero(den, 2):
        out["reason"] = "S30*S12 - S21^2 vanishes"
        return out
    r1 = _div(s21 * s12 - s30 * s03, 2 * den)
    r2 = _div(s30 ** 2 * s03 - 4 * s30 * s21 * s12 + 3 * s21 ** 3, den)
    out["r1"], out["r2"] = r1, r2
    D = s30 * r1 - r2
    if zero(D):
        out["reason"] = "S30*r1 - r2 vanishes"
        return out

    def sigma(n):
        return sum(binomial(n, k) * t[k, n - k] * r1 ** k for k in range(n + 1)) / D ** n

    out["sigma5"] = sigma(5)
    out["sigma7"] = sigma(7)
    # coefficient of y1 y2^4 after the change; removing it shifts the y2^7 coefficient
    u = (-r2 / D, -s30 / D)
    v = (r1 / D, 1 / D)
    mixed = sum(binomial(4, k) * v[0] ** k * v[1] ** (4 - k)
                * (u[0] * t[k + 1, 4 - k] + u[1] * t[k, 5 - k]) for k in range(5))
    a14 = mixed / 24
    out["sigma7_reduced"] = out["sigma7"] - 7560 * a14 ** 2
    return out


def _flat_sum(t: dict):
    s30, s21 = t[3, 0], t[2, 1]
    return sum(binomial(5, k) * t[k, 5 - k] * (-s21) ** k * s30 ** (5 - k) for k in range(6))


@dataclass
class SurfaceInvariants:
    S: dict
    delta: object
    delta_L: object
    kappa: object
    delta_L_det: object
    dp: bool
    dpp: bool
    dp0: bool
    dp0p: bool
    r1: object = None
    r2: object = None
    r1t: object = None
    r2t: object = None
    sigma05: object = None
    sigma07: object = None
    sigma50: object = None
    sigma70: object = None
    sigma07_reduced: object = None
    sigma70_reduced: object = None
    flat_sum: object = None
    flat_sum_t: object = None
    reasons: dict = field(default_factory=dict)

    @property
    def second_fundamental_form(self):
        t = self.S
        return [[t[3, 0], t[2, 1], t[1, 2]], [t[2, 1], t[1, 2], t[0, 3]]]

    def to_dict(self) -> dict:
        names = ["delta", "delta_L", "delta_L_det", "kappa", "r1", "r2", "r1t", "r2t", "sigma05", "sigma07",
                 "sigma50", "sigma70", "sigma07_reduced", "sigma70_reduced"]
        out = {n: _num(getattr(self, n)) for n in names}
        out.update(dp=self.dp, dpp=self.dpp, dp0=self.dp0, dp0p=self.dp0p)
        out["S"] = {f"{i},{j}": _num(v) for (i, j), v in sorted(self.S.items())}
        undefined = {n: self.reasons.get(n, "undefined") for n in names if getattr(self, n) is None}
        if undefined:
            out["reason"] = undefined
        return out


def _num(v):
    if v is None:
        return None
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return v


def _zero_for(S: PolyGerm, eps):
    scale = max((abs(float(c)) for c in S.coeffs.values()), default=1.0)
    return _Zero(S.exact, EPS_SIGN if eps is None else eps, max(scale, 1.0))


def surface_invariants(S: PolyGerm, point=None, eps: float | None = None) -> SurfaceInvariants:
    """Jet invariants of the Lagrangian surface p = grad S(q) at q = point."""
    S = _centered(S, point)
    zero = _zero_for(S, eps)
    t = derivative_table(S)
    s30, s21, s12, s03 = t[3, 0], t[2, 1], t[1, 2], t[0, 3]
    delta = cubic_discriminant(s30, s21, s12, s03)
    dL = delta_L(s30, s21, s12, s03)
    dL_det = delta_L_determinant(s30, s21, s12, s03)
    kappa = gaussian_curvature(s30, s21, s12, s03)
    den = s30 * s12 - s21 ** 2
    den_t = s03 * s21 - s12 ** 2
    dp = zero.sign(den, 2) < 0
    dpp = zero.sign(den_t, 2) < 0
    fs = _flat_sum(t)
    fst = _flat_sum(_swap(t))
    dp0 = zero(den, 2) and not zero(s30) and not zero(fs, 10)
    dp0p = zero(den_t, 2) and not zero(s03) and not zero(fst, 10)
    a = _sigma_block(t, zero)
    b = _sigma_block(_swap(t), zero)
    reasons = {}
    for name, blk in (("", a), ("t", b)):
        if blk["reason"]:
            for key in ("r1", "r2") if blk["r1"] is None else ():
                reasons[key + name] = blk["reason"]
    for key, blk in (("sigma05", a), ("sigma07", a), ("sigma07_reduced", a),
                     ("sigma50", b), ("sigma70", b), ("sigma70_reduced", b)):
        if blk["sigma5"] is None:
            reasons[key] = blk["reason"]
    return SurfaceInvariants(
        S=t, delta=delta, delta_L=dL, kappa=kappa, delta_L_det=dL_det, dp=dp, dpp=dpp, dp0=dp0, dp0p=dp0p,
        r1=a["r1"], r2=a["r2"], r1t=b["r1"], r2t=b["r2"],
        sigma05=a["sigma5"], sigma07=a["sigma7"], sigma50=b["sigma5"], sigma70=b["sigma7"],
        sigma07_reduced=a["sigma7_reduced"], sigma70_reduced=b["sigma7_reduced"],
        flat_sum=fs, flat_sum_t=fst, reasons=reasons)


def _rank(rows, exact: bool, eps: float = EPS_SIGN) -> int:
    if exact:
        m = [[Fraction(v) for v in r] for r in rows]
        rank = 0
        cols = len(m[0])
        for c in range(cols):
            piv = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
            if piv is None:
                continue
            m[rank], m[piv] = m[piv], m[rank]
            for i in range(len(m)):
                if i != rank and m[i][c] != 0:
                    f = m[i][c] / m[rank][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
            rank += 1
        return rank
    a = np.array(rows, dtype=float)
    s = np.linalg.svd(a, compute_uv=False)
    scale = max(1.0, float(np.abs(a).max(initial=0.0)))
    return int((s > eps * scale).sum())


def second_fundamental_form(S: PolyGerm, point=None):
    """(2x3 matrix [[S30, S21, S12], [S21, S12, S03]], rank)."""
    S = _centered(S, point)
    t = derivative_table(S, max_deg=3)
    rows = [[t[3, 0], t[2, 1], t[1, 2]], [t[2, 1], t[1, 2], t[0, 3]]]
    return rows, _rank(rows, S.exact)


@dataclass
class SurfacePointClass:
    basic: str
    parabolic_subtype: str
    singularity: GermClass | str
    versality_checked: bool
    versal: bool | None
    invariants: SurfaceInvariants
    versality: VersalityReport | None = None
    notes: dict = field(default_factory=dict)

    @property
    def label(self) -> str:
        s = self.singularity
        return s.label if isinstance(s, GermClass) else s

    @property
    def conclusive(self) -> bool:
        return isinstance(self.singularity, GermClass) and self.singularity.conclusive

    def report(self) -> dict:
        return {"basic": self.basic, "subtype": self.parabolic_subtype,
                "singularity": self.label, "versal": self.versal,
                "invariants": self.invariants.to_dict(), "notes": _jsonable(self.notes)}


def generating_germ(S: PolyGerm, point=None) -> OddGerm:
    """Odd part of S re-expanded at the point, with its linear terms (absorbed by p) removed."""
    S = _centered(S, point)
    odd = parity_split(S)[1]
    return OddGerm(2, S.order, {e: c for e, c in odd.coeffs.items() if sum(e) > 1}, S.mode)


def unfolding_directions(S: PolyGerm, point=None) -> list[OddGerm]:
    """Initial velocities of the chord family in (p, q): beta_j and d(S even)/d beta_j."""
    S = _centered(S, point)
    even = parity_split(S)[0]
    dirs = [OddGerm(2, S.order, {(1, 0): 1}, S.mode), OddGerm(2, S.order, {(0, 1): 1}, S.mode)]
    for j in range(2):
        d = partial(even, j)
        dirs.append(OddGerm(2, d.order, dict(d.coeffs), S.mode))
    return dirs


def _parabolic_subtype(inv: SurfaceInvariants, rank: int, zero) -> str:
    sk = zero.sign(inv.kappa, 2)
    if sk > 0:
        return "inflection_imaginary"
    if sk == 0:
        return "inflection_flat"
    return "nondegenerate_ellipse" if rank == 2 else "inflection_real"


def classify_surface_point(S: PolyGerm, point=None, check_versality: bool = False,
                           eps: float | None = None) -> SurfacePointClass:
    """Point type of the surface and the singularity of its on-shell caustic there.

    Parabolic points are resolved through the sigma invariants (D series),
    the flat-inflection sums (E_{8/2}) and, past those, the odd classifier on
    the generating germ.
    """
    S = _centered(S, point)
    zero = _zero_for(S, eps)
    inv = surface_invariants(S, eps=eps)
    f = generating_germ(S)
    notes: dict = {"numeric": not S.exact}
    sd = zero.sign(inv.delta, 4)
    subtype = "none"
    if sd > 0:
        basic, sing = "hyperbolic", GermClass(Kind.DMINUS, 2)
    elif sd < 0:
        basic, sing = "elliptic", GermClass(Kind.DPLUS, 2)
    else:
        basic = "parabolic"
        _, rank = second_fundamental_form(S)
        subtype = _parabolic_subtype(inv, rank, zero)
        sing = _parabolic_singularity(inv, f, zero, notes, eps)
    versal = None
    report = None
    if check_versality and isinstance(sing, GermClass) and sing.is_simple:
        report = is_versal(f, unfolding_directions(S), eps)
        versal = report.versal
        notes["versality_order"] = report.determinacy_order
    return SurfacePointClass(basic, subtype, sing, check_versality, versal, inv, report, notes)


def _parabolic_singularity(inv: SurfaceInvariants, f: OddGerm, zero, notes, eps):
    def by_sigma(s5, s7, tag):
        if s5 is None:
            return None
        k5 = zero.sign(s5, 5)
        if k5:
            return GermClass(Kind.DPLUS if k5 > 0 else Kind.DMINUS, 3, diagnostics={"via": tag})
        if s7 is None:
            return None
        k7 = zero.sign(s7, 7)
        if k7:
            return GermClass(Kind.DPLUS if k7 > 0 else Kind.DMINUS, 4, diagnostics={"via": tag})
        return None

    if inv.dp:
        notes["case"] = "dp"
        g = by_sigma(inv.sigma05, inv.sigma07_reduced, "dp")
        if g is not None:
            return g
    elif inv.dpp:
        notes["case"] = "dpp"
        g = by_sigma(inv.sigma50, inv.sigma70_reduced, "dpp")
        if g is not None:
            return g
    elif inv.dp0 or inv.dp0p:
        notes["case"] = "dp0" if inv.dp0 else "dp0p"
        return GermClass(Kind.E8, diagnostics={"via": notes["case"]})
    # beyond codimension 4 the surface family cannot unfold the germ versally
    g = classify_odd_2d(f, eps)
    notes["beyond_surface_codimension"] = True
    return g


# -- on-shell slice ---------------------------------------------------------------

@dataclass(frozen=True)
class SlicePoint:
    ray: int
    beta: tuple
    p: tuple


def _hessian_polys(S: PolyGerm):
    Sf = S.to_float()
    h11 = partial(Sf, 0, 2)
    h12 = partial(partial(Sf, 0), 1)
    h22 = partial(Sf, 1, 2)
    g1 = partial(Sf, 0)
    g2 = partial(Sf, 1)
    return (h11, h12, h22), (g1, g2)


def _chord_det(hess, q, b1, b2):
    """det[Hess S(q+b) - Hess S(q-b)] / |b|^2 (vectorised)."""
    h11, h12, h22 = hess
    plus = (q[0] + b1, q[1] + b2)
    minus = (q[0] - b1, q[1] - b2)
    d11 = evaluate(h11, plus) - evaluate(h11, minus)
    d12 = evaluate(h12, plus) - evaluate(h12, minus)
    d22 = evaluate(h22, plus) - evaluate(h22, minus)
    r2 = b1 * b1 + b2 * b2
    return (d11 * d22 - d12 * d12) / r2


def _chord_p(grad, q, b1, b2):
    plus = (q[0] + b1, q[1] + b2)
    minus = (q[0] - b1, q[1] - b2)
    return tuple(0.5 * (float(evaluate(g, plus)) + float(evaluate(g, minus))) for g in grad)


def onshell_slice(S: PolyGerm, q=(0.0, 0.0), resolution: int = 256, rays: int = 64,
                  rho_max: float = 0.5, chart: str = "lagrangian",
                  workers: int | None = None) -> list[SlicePoint]:
    """Caustic points over a fixed q: zeros of the chord Hessian determinant in beta.

    The determinant vanishes to second order at beta = 0, so it is divided by
    |beta|^2 and sampled on a polar grid. Sign changes are refined by
    bisection both along rays and around rings; the latter catches zero sets
    that are unions of lines through the origin. The shell point (beta = 0)
    is always the first entry, with ray index -1.

    ``chart="normal_form"`` reports p - grad S(q) with the sign flipped, which
    is the chart in which the miniversal families carry ``+ p . beta``.
    """
    if S.num_vars != 2:
        raise ValueError("onshell_slice expects a germ in two variables")
    if resolution < 2 or rays < 4:
        raise ValueError("need resolution >= 2 and rays >= 4")
    if chart not in ("lagrangian", "normal_form"):
        raise ValueError(f"unknown chart {chart!r}")
    q = (float(q[0]), float(q[1]))
    hess, grad = _hessian_polys(S)
    base = _chord_p(grad, q, 0.0, 0.0)

    def to_chart(p):
        if chart == "lagrangian":
            return p
        return (-(p[0] - base[0]), -(p[1] - base[1]))

    thetas = 2 * np.pi * np.arange(rays) / rays
    rhos = rho_max * np.arange(1, resolution + 1) / resolution
    T, R = np.meshgrid(thetas, rhos, indexing="ij")
    G = _chord_det(hess, q, R * np.cos(T), R * np.sin(T))
    scale = max(float(np.abs(G).max(initial=0.0)), 1e-300)
    tiny = 1e-13 * scale

    def g_polar(rho, th):
        return float(_chord_det(hess, q, rho * math.cos(th), rho * math.sin(th)))

    def ray_roots(i):
        found = []
        row = G[i]
        th = thetas[i]
        for j in range(resolution):
            if abs(row[j]) <= tiny:
                found.append((i, float(rhos[j]), th))
            elif j + 1 < resolution and row[j] * row[j + 1] < 0 and abs(row[j + 1]) > tiny:
                r = brentq(lambda x: g_polar(x, th), rhos[j], rhos[j + 1], xtol=1e-14)
                found.append((i, r, th))
        # ring search between ray i and the next one
        i2 = (i + 1) % rays
        t_hi = thetas[i] + 2 * np.pi / rays
        for j in range(resolution):
            a, b = G[i, j], G[i2, j]
            if a * b < 0 and abs(a) > tiny and abs(b) > tiny:
                rho = float(rhos[j])
                t = brentq(lambda x: g_polar(rho, x), thetas[i], t_hi, xtol=1e-14)
                found.append((i, rho, t))
        return found

    n = worker_count(workers)
    if n > 1:
        with ThreadPoolExecutor(n) as ex:
            parts = list(ex.map(ray_roots, range(rays)))
    else:
        parts = [ray_roots(i) for i in range(rays)]
    out = [SlicePoint(-1, (0.0, 0.0), to_chart(base))]
    for part in parts:
        for i, rho, th in part:
            b = (rho * math.cos(th), rho * math.sin(th))
            out.append(SlicePoint(i, b, to_chart(_chord_p(grad, q, *b))))
    return out
