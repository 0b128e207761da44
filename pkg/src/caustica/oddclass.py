"""Simple odd function germs: tangent spaces, determinacy, versality, normal forms.

The group acting is the group of odd diffeomorphism germs of the source. Its
tangent space at ``f`` is the module over even germs generated by
``x_j * df/dx_i``; every computation here works on jets of that module up to
some degree, using exact rational elimination unless the germ is in float
mode.

Normal forms recognised (odd codimension in brackets):

* one variable: ``A_{2k/2}: x^(2k+1)`` [k]
* two variables: ``D+-_{2k/2}: x1^2 x2 +- x2^(2k-1)`` [k], ``E_{8/2}: x1^3 + x2^5`` [4],
  ``J10+-_{10/2}: x1^3 +- x1 x2^4`` [5], ``E_{12/2}: x1^3 + x2^7`` [6]
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ._span import Span, monomial_vec
from .jetcore import (EXACT, FLOAT, OddGerm, PolyGerm, compose_linear, grlex_key,
                      is_odd, monomial_basis, partial, potential, substitute)

EPS_SIGN = 1e-9


class Kind(enum.Enum):
    A = "A"
    DPLUS = "D+"
    DMINUS = "D-"
    E8 = "E8"
    J10PLUS = "J10+"
    J10MINUS = "J10-"
    E12 = "E12"
    NONSIMPLE = "NONSIMPLE"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class GermClass:
    """Result of classifying an odd germ.

    ``index`` is k for the A and D series (``A_{2k/2}``, ``D_{2k/2}``) and
    the truncation order for INCONCLUSIVE.
    """

    kind: Kind
    index: int | None = None
    witness: dict | None = None
    diagnostics: dict = field(default_factory=dict, compare=False)

    @property
    def odd_codimension(self) -> int | None:
        if self.kind in (Kind.A, Kind.DPLUS, Kind.DMINUS):
            return self.index
        return {Kind.E8: 4, Kind.J10PLUS: 5, Kind.J10MINUS: 5, Kind.E12: 6}.get(self.kind)

    @property
    def conclusive(self) -> bool:
        return self.kind is not Kind.INCONCLUSIVE

    @property
    def is_simple(self) -> bool:
        return self.kind not in (Kind.NONSIMPLE, Kind.INCONCLUSIVE)

    @property
    def label(self) -> str:
        k = self.kind
        if k is Kind.A:
            return f"A_{{{2 * self.index}/2}}"
        if k in (Kind.DPLUS, Kind.DMINUS):
            return f"{k.value}_{{{2 * self.index}/2}}"
        if k is Kind.E8:
            return "E_{8/2}"
        if k in (Kind.J10PLUS, Kind.J10MINUS):
            return f"{k.value}_{{10/2}}"
        if k is Kind.E12:
            return "E_{12/2}"
        if k is Kind.NONSIMPLE:
            return "NONSIMPLE"
        return f"INCONCLUSIVE({self.index})"

    def __str__(self):
        return self.label

    def report(self, determinacy=None) -> dict:
        return {"label": self.label, "codim": self.odd_codimension,
                "determinacy": determinacy, "diagnostics": _jsonable(self.diagnostics)}


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return obj.numerator if obj.denominator == 1 else f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, Kind):
        return obj.value
    return obj


def A(k):
    return GermClass(Kind.A, k)


def Dplus(k):
    return GermClass(Kind.DPLUS, k)


def Dminus(k):
    return GermClass(Kind.DMINUS, k)


def inconclusive(order, **diag):
    return GermClass(Kind.INCONCLUSIVE, order, diagnostics=diag)


# -- normal forms -------------------------------------------------------------

def normal_form(kind: Kind, k: int | None = None, order: int = 11) -> OddGerm:
    """The representative germ of a simple odd class."""
    if kind is Kind.A:
        return OddGerm(1, order, {(2 * k + 1,): 1})
    if kind in (Kind.DPLUS, Kind.DMINUS):
        s = 1 if kind is Kind.DPLUS else -1
        return OddGerm(2, order, {(2, 1): 1, (0, 2 * k - 1): s})
    table = {
        Kind.E8: {(3, 0): 1, (0, 5): 1},
        Kind.J10PLUS: {(3, 0): 1, (1, 4): 1},
        Kind.J10MINUS: {(3, 0): 1, (1, 4): -1},
        Kind.E12: {(3, 0): 1, (0, 7): 1},
    }
    return OddGerm(2, order, table[kind])


def standard_deformation_directions(kind: Kind, k: int | None = None, order: int = 11) -> list[OddGerm]:
    """Unfolding monomials of the miniversal odd deformations of each normal form.

    For E_{12/2} the last two directions are ``x1 x2^4`` and ``x2^5``: the odd
    monomials outside the tangent space.
    """
    if kind is Kind.A:
        return [OddGerm(1, order, {(2 * j - 1,): 1}) for j in range(1, k + 1)]
    mono = lambda *es: [OddGerm(2, order, {e: 1}) for e in es]
    if kind in (Kind.DPLUS, Kind.DMINUS):
        return mono((1, 0), *[(0, 2 * i - 3) for i in range(2, k + 1)])
    if kind is Kind.E8:
        return mono((1, 0), (0, 1), (1, 2), (0, 3))
    if kind in (Kind.J10PLUS, Kind.J10MINUS):
        return mono((1, 0), (0, 1), (2, 1), (1, 2), (0, 3))
    if kind is Kind.E12:
        return mono((1, 0), (0, 1), (1, 2), (0, 3), (1, 4), (0, 5))
    raise ValueError(f"no deformation for {kind}")


# -- tangent space ------------------------------------------------------------

def _as_odd(f) -> OddGerm:
    if not isinstance(f, PolyGerm):
        raise TypeError("expected a PolyGerm")
    if not is_odd(f):
        raise ValueError("germ is not odd")
    return OddGerm.of(f)


def _even_monomials(n: int, max_deg: int):
    if max_deg < 0:
        return []
    return monomial_basis(n, "even", 0, max_deg)


def tangent_space_basis(f: PolyGerm, max_deg: int) -> list[PolyGerm]:
    """Spanning set of the tangent space of ``f`` modulo degrees above ``max_deg``.

    Products ``m * x_j * df/dx_i`` for even monomials ``m`` whose degree keeps
    the product's lowest term at or below ``max_deg``.
    """
    f = _as_odd(f)
    n = f.num_vars
    gens = []
    for i in range(n):
        d = partial(f, i)
        for j in range(n):
            e = [0] * n
            e[j] = 1
            g = PolyGerm(n, max_deg, {tuple(e): 1}, f.mode) * d.with_order(max_deg)
            if not g.is_zero():
                gens.append(g)
    out = []
    for g in gens:
        low = g.valuation
        for m in _even_monomials(n, max_deg - low):
            p = PolyGerm(n, max_deg, {m: 1}, g.mode) * g
            if not p.is_zero():
                out.append(p)
    return out


def _eps_of(f, eps):
    return EPS_SIGN if eps is None else eps


def _span_of(germs, exact, eps) -> Span:
    sp = Span(exact=exact, eps=eps)
    for g in germs:
        sp.add(dict(g.coeffs))
    return sp


def is_finitely_determined(f: PolyGerm, eps: float | None = None) -> int | None:
    """Smallest odd k with all odd monomials of degree k and k+2 in the tangent jet.

    This is a sufficient jet-level criterion; None means it did not succeed
    within the germ's truncation order.
    """
    f = _as_odd(f)
    if f.is_zero():
        return None
    eps = _eps_of(f, eps)
    N = f.order
    if N < 3:
        return None
    gens_full = tangent_space_basis(f, N)
    for k in range(1, N - 1, 2):
        top = k + 2
        sp = _span_of((g.truncate(top) for g in gens_full), f.exact, eps)
        need = monomial_basis(f.num_vars, "odd", k, top)
        if all(sp.contains(monomial_vec(m)) for m in need):
            return k
    return None


class NotFinitelyDetermined(ValueError):
    pass


def _complement(sp: Span, candidates) -> list[tuple]:
    out = []
    for m in candidates:
        if sp.add(monomial_vec(m)):
            out.append(m)
    return out


def miniversal_basis(f: PolyGerm, eps: float | None = None) -> list[OddGerm]:
    """Monomial basis of a complement to the tangent space (graded-lex greedy)."""
    f = _as_odd(f)
    k = is_finitely_determined(f, eps)
    if k is None:
        raise NotFinitelyDetermined("germ is not finitely determined at this order")
    top = k + 2
    sp = _span_of(tangent_space_basis(f, top), f.exact, _eps_of(f, eps))
    mons = _complement(sp, monomial_basis(f.num_vars, "odd", 1, top))
    return [OddGerm(f.num_vars, f.order, {m: 1}, f.mode) for m in mons]


@dataclass
class VersalityReport:
    determinacy_order: int | None
    tangent_dims: dict
    missing_monomials: list
    verdict: str  # "versal" | "not_versal" | "inconclusive"

    @property
    def versal(self) -> bool:
        return self.verdict == "versal"

    def to_dict(self) -> dict:
        return {"determinacy": self.determinacy_order,
                "tangent_dims": {str(d): v for d, v in self.tangent_dims.items()},
                "missing": [list(m) for m in self.missing_monomials],
                "verdict": self.verdict}


def _tangent_dims(gens, n, top, exact, eps) -> dict:
    dims = {}
    prev = 0
    for d in range(1, top + 1, 2):
        sp = _span_of((g.truncate(d) for g in gens), exact, eps)
        dims[d] = len(sp) - prev
        prev = len(sp)
    return dims


def _versal_check(f: OddGerm, directions, min_deg: int, eps) -> VersalityReport:
    k = is_finitely_determined(f, eps)
    if k is None:
        return VersalityReport(None, {}, [], "inconclusive")
    top = k + 2
    eps = _eps_of(f, eps)
    gens = tangent_space_basis(f, top)
    dims = _tangent_dims(gens, f.num_vars, top, f.exact, eps)
    sp = _span_of(gens, f.exact, eps)
    for h in directions:
        if h.num_vars != f.num_vars:
            raise ValueError("direction lives in the wrong number of variables")
        sp.add(dict(h.truncate(top).coeffs))
    missing = _complement(sp, monomial_basis(f.num_vars, "odd", min_deg, top))
    return VersalityReport(k, dims, missing, "not_versal" if missing else "versal")


def is_versal(f: PolyGerm, directions: Sequence[PolyGerm], eps: float | None = None) -> VersalityReport:
    """Does ``f + sum t_i * directions[i]`` unfold ``f`` versally?"""
    f = _as_odd(f)
    directions = [_as_odd(h) for h in directions]
    return _versal_check(f, directions, 1, eps)


@dataclass
class RealizationResult:
    ok: bool
    versal: bool
    closed: bool
    report: VersalityReport | None = None
    reason: str = ""

    def __bool__(self):
        return self.ok


def _check_h(f: PolyGerm, h: Sequence[PolyGerm]) -> list[OddGerm]:
    if len(h) != f.num_vars:
        raise ValueError(f"need {f.num_vars} germs h_i, got {len(h)}")
    out = []
    for hi in h:
        if hi.num_vars != f.num_vars:
            raise ValueError("h_i lives in the wrong number of variables")
        if not is_odd(hi):
            raise ValueError("h_i must be odd")
        if any(sum(e) < 3 for e in hi.coeffs):
            raise ValueError("h_i must have no terms of degree below 3")
        out.append(OddGerm.of(hi))
    return out


def _closed(h: Sequence[PolyGerm]) -> bool:
    n = len(h)
    for i in range(n):
        for j in range(i + 1, n):
            a = partial(h[i], j)
            b = partial(h[j], i)
            order = min(a.order, b.order)
            if (a.truncate(order) - b.truncate(order)).is_zero() is False:
                diff = a.truncate(order) - b.truncate(order)
                if h[0].exact or any(abs(c) > EPS_SIGN for c in diff.coeffs.values()):
                    return False
    return True


def realization_check(f: PolyGerm, h: Sequence[PolyGerm], eps: float | None = None) -> RealizationResult:
    """Can ``f`` be the odd part of a generating function whose even part has gradient ``h``?

    Requires the degree >= 3 odd jets to be covered by the tangent space of
    ``f`` plus span(h), and the form ``sum h_i dx_i`` to be closed.
    """
    f = _as_odd(f)
    h = _check_h(f, h)
    closed = _closed(h)
    rep = _versal_check(f, h, 3, eps)
    versal = rep.verdict == "versal"
    reason = ""
    if rep.verdict == "inconclusive":
        reason = "germ not finitely determined at this order"
    elif not versal:
        reason = "tangent space plus h misses " + ", ".join(str(list(m)) for m in rep.missing_monomials)
    if not closed:
        reason = (reason + "; " if reason else "") + "1-form sum h_i dx_i is not closed"
    return RealizationResult(versal and closed, versal, closed, rep, reason)


class RealizationError(ValueError):
    pass


def realize_generating_function(f: PolyGerm, h: Sequence[PolyGerm], eps: float | None = None) -> PolyGerm:
    """S = f + g with dg = sum h_i dx_i; the odd part of S is f."""
    res = realization_check(f, h, eps)
    if not res:
        raise RealizationError(res.reason)
    g = potential(list(h), order=f.order)
    return f + g


def nonsimple_gate(num_vars: int) -> bool:
    """True when no singular odd germ in this many variables is simple.

    Cubic odd jets form a space of dimension (m+2)(m+1)m/6 acted on by GL(m)
    of dimension m^2; the former wins from m = 3 on.
    """
    if num_vars < 1:
        raise ValueError("num_vars must be >= 1")
    m = num_vars
    return (m + 2) * (m + 1) * m // 6 > m * m


# -- classification -------------------------------------------------------------

def cubic_discriminant(c30, c21, c12, c03):
    """Discriminant of a binary cubic from its derivative scalars S_{i,j}.

    Positive for three distinct real linear factors, negative for one real
    factor, zero for a repeated factor.
    """
    s30, s21, s12, s03 = c30, c21, c12, c03
    num = (3 * s12 ** 2 * s21 ** 2 - 4 * s03 * s21 ** 3 - 4 * s12 ** 3 * s30
           - s03 ** 2 * s30 ** 2 + 6 * s03 * s12 * s21 * s30)
    if isinstance(num, float):
        return num / 48.0
    return Fraction(num) / 48 if not isinstance(num, Fraction) else num / 48


def cubic_jet_scalars(f: PolyGerm):
    """(S30, S21, S12, S03): third derivatives at 0, i.e. coefficient times i!j!."""
    c = f.coefficient
    return (6 * c((3, 0)), 2 * c((2, 1)), 2 * c((1, 2)), 6 * c((0, 3)))


class _Zero:
    """Zero test: exact for rationals, scaled tolerance for floats."""

    def __init__(self, exact: bool, eps: float, scale: float):
        self.exact = exact
        self.eps = eps
        self.scale = scale if scale > 0 else 1.0

    def __call__(self, v, power: int = 1) -> bool:
        if self.exact:
            return v == 0
        return abs(v) <= self.eps * self.scale ** power

    def sign(self, v, power: int = 1) -> int:
        if self(v, power):
            return 0
        return 1 if v > 0 else -1


def _scale(f: PolyGerm) -> float:
    return max((abs(float(c)) for c in f.coeffs.values()), default=1.0)


def _inverse2(m):
    (a, b), (c, d) = m
    det = a * d - b * c
    return [[d / det, -b / det], [-c / det, a / det]]


def classify_odd_1d(f: PolyGerm) -> GermClass:
    """``A_{2k/2}`` with 2k+1 the lowest degree present."""
    f = _as_odd(f)
    if f.num_vars != 1:
        raise ValueError("classify_odd_1d expects one variable")
    if f.is_zero():
        return inconclusive(f.order, reason="germ vanishes through the truncation order")
    d = f.valuation
    diag = {"lowest_degree": d, "numeric": not f.exact}
    return GermClass(Kind.A, (d - 1) // 2, diagnostics=diag)


def _double_root_change(s, zero, exact):
    """Linear map M with cubic(M y) = y1^2 y2, using the repeated factor of the cubic.

    ``s`` holds (S30, S21, S12, S03). The cubic equals
    (1/6) (x1 - r1 x2)^2 (S30 x1 - r2 x2) when S30 S12 - S21^2 != 0, and the
    same with the variables swapped otherwise.
    """
    s30, s21, s12, s03 = s
    den = s30 * s12 - s21 ** 2
    den_t = s03 * s21 - s12 ** 2
    if not zero(den, 2):
        r1 = (s21 * s12 - s30 * s03) / (2 * den)
        r2 = (s30 ** 2 * s03 - 4 * s30 * s21 * s12 + 3 * s21 ** 3) / den
        # y1 = x1 - r1 x2, y2 = (S30 x1 - r2 x2)/6
        A = [[1, -r1], [s30 / 6, -r2 / 6]]
        branch = "dp"
    elif not zero(den_t, 2):
        r1 = (s21 * s12 - s30 * s03) / (2 * den_t)
        r2 = (s03 ** 2 * s30 - 4 * s03 * s12 * s21 + 3 * s12 ** 3) / den_t
        A = [[-r1, 1], [-r2 / 6, s03 / 6]]
        branch = "dpp"
    else:
        return None, None
    if exact:
        A = [[Fraction(v) for v in row] for row in A]
    else:
        A = [[float(v) for v in row] for row in A]
    return _inverse2(A), branch


def _triple_root_change(c, zero, exact):
    """Linear map M and scale kappa with cubic(M y) = kappa * y1^3."""
    c30, c21, c12, c03 = c
    if not zero(c30):
        t = c21 / (3 * c30)
        A = [[1, t], [0, 1]]
        kappa = c30
    else:
        A = [[0, 1], [1, 0]]
        kappa = c03
    if exact:
        A = [[Fraction(v) for v in row] for row in A]
    else:
        A = [[float(v) for v in row] for row in A]
    return _inverse2(A), kappa


def _mat_repr(M, exact):
    if exact:
        return [[f"{Fraction(v).numerator}/{Fraction(v).denominator}" for v in row] for row in M]
    return [[float(v) for v in row] for row in M]


def _apply_near_identity(w: PolyGerm, v1: dict, v2: dict) -> PolyGerm:
    n = 2
    x1 = PolyGerm(n, w.order, {(1, 0): 1, **v1}, w.mode)
    x2 = PolyGerm(n, w.order, {(0, 1): 1, **v2}, w.mode)
    return substitute(w, [x1, x2])


def classify_odd_2d(f: PolyGerm, eps: float | None = None) -> GermClass:
    """Decision tree for singular odd germs in two variables.

    The cubic jet is brought to ``x1^2 x2 +- x2^3``, ``x1^2 x2`` or ``x1^3`` by
    a linear change; in the last two cases the higher odd jets are reduced
    degree by degree with odd near-identity changes and the coefficients left
    outside the tangent image decide the class.
    """
    f = _as_odd(f)
    if f.num_vars != 2:
        raise ValueError("classify_odd_2d expects two variables")
    if any(sum(e) == 1 for e in f.coeffs):
        raise ValueError("germ is not singular: it has degree-1 terms")
    N = f.order
    eps = _eps_of(f, eps)
    exact = f.exact
    scale = _scale(f)
    zero = _Zero(exact, eps, scale)
    diag: dict = {"numeric": not exact}
    if f.is_zero():
        return inconclusive(N, reason="germ vanishes through the truncation order", **diag)

    s = cubic_jet_scalars(f)
    c = (f.coefficient((3, 0)), f.coefficient((2, 1)), f.coefficient((1, 2)), f.coefficient((0, 3)))
    if all(zero(v) for v in c):
        diag["reason"] = "zero cubic jet: quintic jets (dim 6) outnumber GL(2) (dim 4)"
        return GermClass(Kind.NONSIMPLE, diagnostics=diag)

    delta = cubic_discriminant(*s)
    diag["delta"] = delta
    sgn = zero.sign(delta, 4)
    if sgn > 0:
        return GermClass(Kind.DMINUS, 2, diagnostics=diag)
    if sgn < 0:
        return GermClass(Kind.DPLUS, 2, diagnostics=diag)

    M, branch = _double_root_change(s, zero, exact)
    if M is not None:
        diag["branch"] = branch
        return _classify_d_series(f, M, zero, diag)
    M, kappa = _triple_root_change(c, zero, exact)
    return _classify_e_series(f, M, kappa, zero, diag)


def _classify_d_series(f, M, zero, diag) -> GermClass:
    N = f.order
    witness = {"linear_change": _mat_repr(M, f.exact)}
    w = compose_linear(f, M)
    probes = []
    diag["probes"] = probes
    for d in range(5, N + 1, 2):
        gd = w.homogeneous(d)
        wscale = max(_scale(w), 1.0) if not f.exact else 1.0
        zd = _Zero(zero.exact, zero.eps, wscale)
        a = gd.coefficient((0, d))
        probes.append({"degree": d, "coefficient": a})
        s = zd.sign(a)
        if s:
            k = (d + 1) // 2
            kind = Kind.DPLUS if s > 0 else Kind.DMINUS
            return GermClass(kind, k, witness=witness, diagnostics=diag)
        if d + 2 > N:
            break
        # kill every monomial divisible by y1: y1 y2^(d-1) via y1 -> y1 + v1, the rest via y2
        v1, v2 = {}, {}
        for (i, j), cf in gd.coeffs.items():
            if i == 1:
                v1[(0, j - 1)] = v1.get((0, j - 1), 0) - cf / 2
            elif i >= 2:
                v2[(i - 2, j)] = v2.get((i - 2, j), 0) - cf
        if v1 or v2:
            w = _apply_near_identity(w, v1, v2)
    return GermClass(Kind.INCONCLUSIVE, N, witness=witness,
                     diagnostics={**diag, "reason": "x1^2 x2 jet not resolved through the truncation order"})


def _classify_e_series(f, M, kappa, zero, diag) -> GermClass:
    N = f.order
    witness = {"linear_change": _mat_repr(M, f.exact)}
    diag["kappa"] = kappa
    if N < 5:
        return GermClass(Kind.INCONCLUSIVE, N, witness=witness, diagnostics=diag)
    w = compose_linear(f, M)
    g5 = w.homogeneous(5)
    wscale = max(_scale(w), 1.0) if not f.exact else 1.0
    zd = _Zero(zero.exact, zero.eps, wscale)
    a = g5.coefficient((0, 5))
    b = g5.coefficient((1, 4))
    diag["probes"] = [{"degree": 5, "a": a, "b": b}]
    if not zd(a):
        return GermClass(Kind.E8, witness=witness, diagnostics=diag)
    if not zd(b):
        s = zd.sign(b) * (1 if kappa > 0 else -1)
        return GermClass(Kind.J10PLUS if s > 0 else Kind.J10MINUS, witness=witness, diagnostics=diag)
    if N < 7:
        return GermClass(Kind.INCONCLUSIVE, N, witness=witness, diagnostics=diag)
    v1 = {}
    for (i, j), cf in g5.coeffs.items():
        if i >= 2:
            v1[(i - 2, j)] = v1.get((i - 2, j), 0) - cf / (3 * kappa)
    if v1:
        w = _apply_near_identity(w, v1, {})
    g7 = w.homogeneous(7)
    cc = g7.coefficient((1, 6))
    dd = g7.coefficient((0, 7))
    diag["probes"].append({"degree": 7, "c": cc, "d": dd})
    if not zd(dd):
        return GermClass(Kind.E12, witness=witness, diagnostics=diag)
    if not zd(cc):
        diag["reason"] = "x1^3 + c x1 x2^6 + ... carries a modulus"
        return GermClass(Kind.NONSIMPLE, witness=witness, diagnostics=diag)
    diag["reason"] = "7-jet reduces to x1^3: adjacent to the unimodal x1^3 + c x1 x2^6 + x2^9 family"
    return GermClass(Kind.NONSIMPLE, witness=witness, diagnostics=diag)


def classify(f: PolyGerm, eps: float | None = None) -> GermClass:
    """Dispatch on the number of variables; three or more are refused as non-simple."""
    if f.num_vars == 1:
        return classify_odd_1d(f)
    if f.num_vars == 2:
        return classify_odd_2d(f, eps)
    if nonsimple_gate(f.num_vars):
        m = f.num_vars
        return GermClass(Kind.NONSIMPLE, diagnostics={
            "gate": True,
            "reason": f"cubic odd jets have dimension {(m + 2) * (m + 1) * m // 6} > dim GL({m}) = {m * m}"})
    raise ValueError("unsupported number of variables")
