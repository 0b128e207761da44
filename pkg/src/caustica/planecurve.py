"""Wigner caustics of Lagrangian plane curves.

Two views of the same object:

* on shell, for a curve given as the graph p = S'(q) of a generating
  function, the caustic near the curve is traced from the chord equations
  S''(q + b) = S''(q - b) and p = (S'(q + b) + S'(q - b)) / 2;
* off shell, for a sampled closed curve, the caustic is the locus of
  midpoints of chords joining points with parallel tangents.
"""

from __future__ import annotations

import csv
import io
import math
from fractions import Fraction
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.optimize import brentq

from .jetcore import FLOAT, PolyGerm, derivative_value, evaluate, partial, substitute, translate
from ._workers import worker_count

SHELL = "shell"
OFFDIAGONAL = "offdiagonal"


# -- on-shell tracing ---------------------------------------------------------------

@dataclass
class Tangency:
    contact_point: tuple
    one_sided: bool
    side: str
    quadratic_coeff: float
    linear_coeff: float
    tangent: bool
    samples_used: int

    def to_dict(self) -> dict:
        return {"contact_point": list(self.contact_point), "one_sided": self.one_sided,
                "side": self.side, "quadratic_coeff": self.quadratic_coeff,
                "linear_coeff": self.linear_coeff, "tangent": self.tangent}


@dataclass
class CausticBranch:
    """Ordered caustic samples (p, q) with the chord half-length b of each."""

    points: np.ndarray
    beta_values: np.ndarray
    branch_kind: str
    tangency: Tangency | None = None

    def __len__(self):
        return len(self.points)

    @property
    def q(self):
        return self.points[:, 1]

    @property
    def p(self):
        return self.points[:, 0]


class BranchList(list):
    """List of branches plus the per-point solver failures met while tracing."""

    def __init__(self, branches=(), failures=()):
        super().__init__(branches)
        self.failures = list(failures)


def _check_curve_germ(S: PolyGerm):
    if S.num_vars != 1:
        raise ValueError("expected a generating function of one variable")
    if S.degree < 3:
        raise ValueError("generating function must have degree >= 3")


def chord_polynomials(S: PolyGerm):
    """(E, P): E(q, b) = [S''(q+b) - S''(q-b)] / (2b) and P(q, b) = [S'(q+b) + S'(q-b)] / 2.

    Both are polynomials in (q, b), even in b. Off-diagonal caustic points are
    the zeros of E with b != 0.
    """
    _check_curve_germ(S)
    Sf = S.to_float() if S.mode == FLOAT else S
    order = max(S.degree, 1)
    qplus = PolyGerm(2, order, {(1, 0): 1, (0, 1): 1})
    qminus = PolyGerm(2, order, {(1, 0): 1, (0, 1): -1})
    d1 = partial(Sf, 0).with_order(order)
    d2 = partial(Sf, 0, 2).with_order(order)
    diff = substitute(d2, [qplus]) - substitute(d2, [qminus])
    E = PolyGerm(2, order, {(i, j - 1): c / 2 for (i, j), c in diff.coeffs.items()}, diff.mode)
    P = (substitute(d1, [qplus]) + substitute(d1, [qminus])) * Fraction(1, 2)
    return E, P


def offdiagonal_roots(E: PolyGerm, q: float, beta_max: float, grid: int = 2048,
                      xtol: float = 1e-12, maxiter: int = 200):
    """Nonzero roots b in [-beta_max, beta_max] of E(q, b) = 0 (symmetric in b).

    Returns (roots, failures). Sign changes on the grid are refined with
    Brent's method; grid points where E vanishes are roots as they stand.
    """
    Ef = E.to_float()
    bs = np.linspace(0.0, beta_max, grid + 1)[1:]
    vals = evaluate(Ef, (np.full_like(bs, q), bs))
    roots, failures = [], []
    fn = lambda b: float(evaluate(Ef, (q, b)))
    skip_next = False
    for j in range(len(bs)):
        if skip_next:
            skip_next = False
            continue
        if vals[j] == 0.0:
            roots.append(float(bs[j]))
            skip_next = True
            continue
        if j + 1 < len(bs) and vals[j] * vals[j + 1] < 0:
            try:
                roots.append(brentq(fn, bs[j], bs[j + 1], xtol=xtol, maxiter=maxiter))
            except RuntimeError as exc:
                failures.append({"q": q, "bracket": [float(bs[j]), float(bs[j + 1])],
                                 "error": str(exc)})
    pos = sorted(roots)
    return [-b for b in reversed(pos)] + pos, failures


def _chain(samples, jump_factor: float = 5.0):
    """Group (q_index, q, b, p) samples into continuous branches.

    Links go to the nearest sample at the previous q index, measured in
    (q, b^2): b^2 stays smooth where a branch closes up on the shell (b -> 0)
    while b itself has a square-root profile there. A link is refused when it
    is longer than ``jump_factor`` times the median link length.
    """
    by_index: dict = {}
    for s in samples:
        by_index.setdefault(s[0], []).append(s)
    keys = sorted(by_index)

    def dist(a, b):
        return math.hypot(a[1] - b[1], a[2] ** 2 - b[2] ** 2)

    cand = []
    for k in keys:
        prev = by_index.get(k - 1, [])
        for s in by_index[k]:
            if prev:
                j = min(range(len(prev)), key=lambda i: dist(prev[i], s))
                cand.append((s, prev[j], dist(prev[j], s)))
            else:
                cand.append((s, None, math.inf))
    finite = [d for _, _, d in cand if math.isfinite(d)]
    thresh = jump_factor * float(np.median(finite)) if finite else 0.0
    owner: dict = {}
    branches: list = []
    for s, prev, d in cand:
        key = (s[0], s[2])
        if prev is not None and d <= thresh:
            pk = (prev[0], prev[2])
            bi = owner.get(pk)
            if bi is not None and branches[bi][-1] is prev:
                branches[bi].append(s)
                owner[key] = bi
                continue
        owner[key] = len(branches)
        branches.append([s])
    return branches


def onshell_trace(S: PolyGerm, q_range=(-0.05, 0.05), resolution: int = 1001,
                  beta_max: float | None = None, grid: int = 2048,
                  workers: int | None = None) -> BranchList:
    """Shell branch p = S'(q) plus all off-diagonal branches with 0 < b <= beta_max."""
    _check_curve_germ(S)
    lo, hi = float(q_range[0]), float(q_range[1])
    if not lo < hi:
        raise ValueError("q_range must be an increasing interval")
    if not lo <= 0.0 <= hi:
        raise ValueError("q_range must contain 0")
    if resolution < 2:
        raise ValueError("resolution must be >= 2")
    if beta_max is None:
        beta_max = (hi - lo) / 2
    if beta_max <= 0:
        raise ValueError("beta_max must be positive")
    qs = np.linspace(lo, hi, resolution)
    dS = partial(S.to_float(), 0)
    shell = CausticBranch(np.column_stack([evaluate(dS, (qs,)), qs]), np.zeros_like(qs), SHELL)

    E, P = chord_polynomials(S)
    Pf = P.to_float()

    def solve(i):
        q = float(qs[i])
        roots, fails = offdiagonal_roots(E, q, beta_max, grid)
        pts = [(i, q, b, float(evaluate(Pf, (q, b)))) for b in roots if b > 0]
        return pts, fails

    n = worker_count(workers)
    if n > 1:
        with ThreadPoolExecutor(n) as ex:
            results = list(ex.map(solve, range(resolution)))
    else:
        results = [solve(i) for i in range(resolution)]
    samples = [s for pts, _ in results for s in pts]
    failures = [f for _, fs in results for f in fs]
    out = BranchList([shell], failures)
    for chain in _chain(samples):
        arr = np.array([(s[3], s[1]) for s in chain])
        br = CausticBranch(arr, np.array([s[2] for s in chain]), OFFDIAGONAL)
        try:
            br.tangency = tangency_report(br, S)
        except ValueError:
            pass
        out.append(br)
    return out


def tangency_report(branch: CausticBranch, S: PolyGerm, window: float = 0.25) -> Tangency:
    """How an off-diagonal branch meets the curve.

    The contact abscissa q0 is where b^2 extrapolates to zero (quadratic fit
    over the samples with the smallest b). Then p - S'(q) is fitted by
    c1 (q - q0) + c2 (q - q0)^2 + c3 (q - q0)^3 over the ``window`` fraction
    of samples nearest to q0.
    """
    if branch.branch_kind != OFFDIAGONAL:
        raise ValueError("tangency is defined for off-diagonal branches only")
    m = len(branch)
    if m < 5:
        raise ValueError(f"insufficient samples near contact: {m} < 5")
    q = branch.q
    b2 = branch.beta_values ** 2
    take = max(5, int(window * m))
    near = np.argsort(b2)[:take]
    cf = np.polyfit(q[near], b2[near], 2)
    roots = [r.real for r in np.roots(cf) if abs(r.imag) < 1e-12] if cf[0] != 0 else []
    if not roots:
        raise ValueError("branch does not approach the shell")
    qn = q[near[0]]
    q0 = min(roots, key=lambda r: abs(r - qn))
    dS = partial(S.to_float(), 0)
    resid = branch.p - evaluate(dS, (q,))
    u = q - q0
    sel = np.argsort(np.abs(u))[:take]
    A = np.column_stack([u[sel], u[sel] ** 2, u[sel] ** 3])
    coef, *_ = np.linalg.lstsq(A, resid[sel], rcond=None)
    span = float(np.abs(u).max())
    tol = 1e-9 * max(span, 1.0)
    left = bool(np.all(u <= tol))
    right = bool(np.all(u >= -tol))
    side = "left" if left and not right else "right" if right and not left else "both"
    c1, c2 = float(coef[0]), float(coef[1])
    # first-order contact: the linear term is negligible against the quadratic one
    tangent = abs(c1) <= 1e-3 * abs(c2) * float(np.abs(u[sel]).max())
    p0 = float(evaluate(dS, (q0,)))
    return Tangency((p0, float(q0)), left != right, side, c2, c1, tangent, int(take))


def classify_curve_point(S: PolyGerm, point=0, eps: float = 1e-9) -> str:
    """'A_{2/2}-ordinary', 'A_{4/2}-inflection' or 'unstable' at q = point."""
    _check_curve_germ(S)
    if point:
        S = translate(S, (point,))
    d3, d4, d5 = (derivative_value(S, (k,)) for k in (3, 4, 5))
    scale = max([abs(float(c)) for c in S.coeffs.values()] + [1.0])
    nz = (lambda v: v != 0) if S.exact else (lambda v: abs(v) > eps * scale)
    if nz(d3):
        return "A_{2/2}-ordinary"
    if nz(d4) and nz(d5):
        return "A_{4/2}-inflection"
    return "unstable"


# -- sampled closed curves -------------------------------------------------------------

class OpenCurveError(ValueError):
    pass


class CurveSamples:
    """Closed polyline (p_i, q_i); the last sample repeats the first.

    Tangent angles come from a periodic cubic spline through the samples,
    parametrised by sample index.
    """

    def __init__(self, samples, closed_tol: float = 1e-9):
        arr = np.asarray(samples, dtype=float)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise ValueError("samples must be an (n, 2) array of (p, q)")
        ext = float(np.ptp(arr, axis=0).max()) if len(arr) else 0.0
        if len(arr) < 2 or np.linalg.norm(arr[0] - arr[-1]) > closed_tol * max(ext, 1.0):
            raise OpenCurveError("curve is not closed: first and last samples differ")
        if len(arr) < 4:
            raise ValueError("need at least 3 distinct samples")
        pts = arr[:-1]
        steps = np.linalg.norm(np.diff(np.vstack([pts, pts[:1]]), axis=0), axis=1)
        if np.any(steps == 0):
            raise ValueError("consecutive samples coincide")
        self.samples = arr
        self.points = pts
        n = len(pts)
        t = np.arange(n + 1, dtype=float)
        self.spline = CubicSpline(t, np.vstack([pts, pts[:1]]), bc_type="periodic")
        self.velocity = self.spline.derivative()
        self.tangents = self.velocity(t[:-1])
        self.tangent_angles = np.arctan2(self.tangents[:, 1], self.tangents[:, 0])

    def __len__(self):
        return len(self.points)

    @classmethod
    def from_function(cls, fn, n: int):
        th = 2 * np.pi * np.arange(n + 1) / n
        p, q = fn(th)
        p, q = np.asarray(p, float), np.asarray(q, float)
        p[-1], q[-1] = p[0], q[0]
        obj = cls(np.column_stack([p, q]))
        obj.theta = th
        return obj

    @classmethod
    def from_csv(cls, text: str):
        reader = csv.reader(io.StringIO(text))
        header = [h.strip() for h in next(reader, [])]
        if header != ["theta", "p", "q"]:
            raise ValueError("curve CSV header must be 'theta,p,q'")
        rows = []
        for ln, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != 3:
                raise ValueError(f"line {ln}: expected 3 fields")
            try:
                rows.append([float(c) for c in row])
            except ValueError:
                raise ValueError(f"line {ln}: non-numeric field") from None
        arr = np.array(rows)
        if len(arr) == 0:
            raise ValueError("curve CSV has no samples")
        obj = cls(arr[:, 1:])
        obj.theta = arr[:, 0]
        return obj

    def to_csv(self) -> str:
        th = getattr(self, "theta", np.arange(len(self.samples), dtype=float))
        lines = ["theta,p,q"]
        lines += [f"{a:.17g},{p:.17g},{q:.17g}" for a, (p, q) in zip(th, self.samples)]
        return "\n".join(lines) + "\n"

    @property
    def scale(self) -> float:
        c = self.points.mean(axis=0)
        return float(np.linalg.norm(self.points - c, axis=1).max())

    def turning_jumps(self) -> np.ndarray:
        """Turning angle between consecutive polyline edges."""
        e = np.diff(np.vstack([self.points, self.points[:1]]), axis=0)
        ang = np.arctan2(e[:, 1], e[:, 0])
        d = np.diff(np.append(ang, ang[0]))
        return np.abs((d + np.pi) % (2 * np.pi) - np.pi)

    def is_smooth(self, factor: float = 20.0, floor: float = 0.1) -> bool:
        j = self.turning_jumps()
        return not bool(np.any(j > max(factor * float(np.median(j)), floor)))


@dataclass(frozen=True)
class ChordPair:
    """Chord between sample ``index_a`` and the parallel-tangent point at parameter ``t_b``.

    ``index_b`` is the sample nearest to ``t_b``; the midpoint uses the
    interpolated partner point.
    """

    index_a: int
    index_b: int
    t_b: float
    midpoint: tuple
    angle_mismatch: float


def _wrap_pi(x):
    # angle difference modulo pi, in [0, pi/2]
    d = np.mod(x, np.pi)
    return np.minimum(d, np.pi - d)


def chord_scan(curve: CurveSamples, angle_tol: float = 1e-3,
               workers: int | None = None) -> list[ChordPair]:
    """All chords (a, b), a < b, whose endpoint tangents are parallel.

    For each sample a, the cross product of the tangent at a with the spline
    tangent is scanned over the samples; each sign change (away from a
    itself) is refined by Brent's method on the spline parameter. A refined
    partner is kept when its tangent mismatch is within ``angle_tol``.
    """
    n = len(curve)
    if n < 16:
        raise ValueError("chord scan needs at least 16 samples")
    T = curve.tangents
    vel = curve.velocity
    spl = curve.spline
    P = curve.points

    def partners(a):
        ta = T[a]
        c = ta[0] * T[:, 1] - ta[1] * T[:, 0]
        tiny = 1e-14 * np.linalg.norm(T, axis=1) * np.linalg.norm(ta)
        zero = np.abs(c) <= tiny
        c2 = np.roll(c, -1)
        bracket = (c * c2 < 0) & ~zero & ~np.roll(zero, -1)
        # the trivial root at a itself sits in the two intervals touching a
        bracket[a] = bracket[(a - 1) % n] = False
        zero[a] = False
        f = lambda t: float(ta[0] * vel(t)[1] - ta[1] * vel(t)[0])
        cands = [float(j) for j in np.flatnonzero(zero)]
        cands += [brentq(f, float(j), float(j + 1), xtol=1e-13) for j in np.flatnonzero(bracket)]
        out = []
        for tb in sorted(cands):
            tb = tb % n
            if tb <= a:
                continue
            vb = vel(tb)
            mis = float(_wrap_pi(math.atan2(vb[1], vb[0]) - math.atan2(ta[1], ta[0])))
            if mis > angle_tol:
                continue
            ib = int(round(tb)) % n
            if ib == a:
                continue
            pb = spl(tb)
            mid = (0.5 * (P[a, 0] + pb[0]), 0.5 * (P[a, 1] + pb[1]))
            out.append(ChordPair(a, ib, tb, mid, mis))
        return out

    nw = worker_count(workers)
    if nw > 1:
        with ThreadPoolExecutor(nw) as ex:
            parts = list(ex.map(partners, range(n)))
    else:
        parts = [partners(a) for a in range(n)]
    return [c for part in parts for c in part]


@dataclass
class CuspReport:
    count: int
    degenerate: bool
    confidence: str
    positions: list = field(default_factory=list)


def cusp_count(midpoints, scale: float | None = None, speed_factor: float = 0.05,
               closed: bool | None = None) -> CuspReport:
    """Cusps of an ordered midpoint locus.

    A cusp is a maximal run of segments slower than ``speed_factor`` times the
    median segment speed across which the direction of travel reverses.
    A locus that collapses to a point (relative to ``scale``) is degenerate.
    """
    m = np.asarray(midpoints, dtype=float)
    if m.ndim != 2 or m.shape[1] != 2:
        raise ValueError("midpoints must be an (n, 2) array")
    if scale is None:
        scale = float(np.ptp(m, axis=0).max()) if len(m) else 0.0
    if len(m) < 3 or float(np.ptp(m, axis=0).max()) <= 1e-6 * max(scale, 1e-300):
        return CuspReport(0, True, "high")
    seg = np.diff(m, axis=0)
    if closed is None:
        gap = np.linalg.norm(m[0] - m[-1])
        closed = gap <= 5 * float(np.median(np.linalg.norm(seg, axis=1)))
    if closed:
        seg = np.vstack([seg, m[:1] - m[-1:]])
    speed = np.linalg.norm(seg, axis=1)
    med = float(np.median(speed))
    slow = speed < speed_factor * med
    k = len(seg)
    if slow.all():
        return CuspReport(0, True, "low")
    # rotate so that a fast segment comes first when closed
    start = int(np.argmin(slow)) if closed else 0
    order = np.roll(np.arange(k), -start) if closed else np.arange(k)
    cusps = []
    noisy = 0
    i = 0
    while i < k:
        if not slow[order[i]]:
            i += 1
            continue
        j = i
        while j < k and slow[order[j]]:
            j += 1
        before = order[i - 1] if i > 0 else (order[k - 1] if closed else None)
        after = order[j] if j < k else (order[0] if closed else None)
        if before is not None and after is not None:
            if float(np.dot(seg[before], seg[after])) < 0:
                run = order[i:j]
                cusps.append(int(run[np.argmin(speed[run])]))
            else:
                noisy += 1
        i = j
    conf = "high" if noisy == 0 else "low"
    return CuspReport(len(cusps), False, conf, cusps)


def midpoint_locus(pairs: list[ChordPair]) -> np.ndarray:
    """Midpoints ordered by the first endpoint, then by the partner parameter."""
    ps = sorted(pairs, key=lambda c: (c.index_a, c.t_b))
    return np.array([c.midpoint for c in ps]) if ps else np.zeros((0, 2))


def branches_to_csv(branches) -> str:
    lines = ["branch_id,kind,q,p,beta"]
    for bid, br in enumerate(branches):
        for (p, q), b in zip(br.points, br.beta_values):
            lines.append(f"{bid},{br.branch_kind},{q:.17g},{p:.17g},{b:.17g}")
    return "\n".join(lines) + "\n"


def chords_to_csv(pairs) -> str:
    lines = ["i,j,mid_p,mid_q,mismatch"]
    for c in pairs:
        lines.append(f"{c.index_a},{c.index_b},{c.midpoint[0]:.17g},{c.midpoint[1]:.17g},"
                     f"{c.angle_mismatch:.17g}")
    return "\n".join(lines) + "\n"
