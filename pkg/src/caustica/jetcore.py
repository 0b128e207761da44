"""Truncated polynomial germs in a few variables.

A :class:`PolyGerm` is a sparse polynomial known modulo monomials of total
degree greater than ``order``. Coefficients are either exact rationals
(:class:`fractions.Fraction`) or Python floats; the exact mode is the default
for anything that feeds a sign decision.

Exponent tuples are the dictionary keys, e.g. ``(2, 1)`` is ``x1**2 * x2``.
"""

from __future__ import annotations

import json
import numbers
from fractions import Fraction
from math import comb
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

DEFAULT_ORDER = 11

EXACT = "exact"
FLOAT = "float"


def _to_exact(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, numbers.Integral):
        return Fraction(int(value))
    if isinstance(value, numbers.Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot use {value!r} as an exact coefficient")


def _is_float_like(value) -> bool:
    return isinstance(value, numbers.Real) and not isinstance(value, numbers.Rational)


def degree_of(exps: Sequence[int]) -> int:
    return sum(exps)


def grlex_key(exps: Sequence[int]):
    """Sort key: total degree first, then larger power of x1 first."""
    return (sum(exps), tuple(-k for k in exps))


class PolyGerm:
    """Immutable truncated polynomial germ.

    Parameters
    ----------
    num_vars : int
        Number of variables.
    order : int
        Truncation degree N; terms of total degree above N are dropped.
    coeffs : mapping, optional
        ``{exponent tuple: coefficient}``.
    mode : {"exact", "float"}, optional
        Inferred from the coefficients when omitted: any float forces float
        mode.
    """

    __slots__ = ("num_vars", "order", "mode", "_coeffs", "_hash")

    def __init__(self, num_vars: int, order: int = DEFAULT_ORDER,
                 coeffs: Mapping | None = None, mode: str | None = None):
        if num_vars < 1:
            raise ValueError("num_vars must be >= 1")
        if order < 0:
            raise ValueError("order must be >= 0")
        coeffs = dict(coeffs or {})
        if mode is None:
            mode = FLOAT if any(_is_float_like(c) for c in coeffs.values()) else EXACT
        if mode not in (EXACT, FLOAT):
            raise ValueError(f"unknown mode {mode!r}")
        conv = _to_exact if mode == EXACT else float
        clean = {}
        for exps, c in coeffs.items():
            exps = tuple(int(k) for k in exps)
            if len(exps) != num_vars or any(k < 0 for k in exps):
                raise ValueError(f"bad exponent tuple {exps} for {num_vars} variables")
            if sum(exps) > order:
                continue
            c = conv(c)
            if c != 0:
                clean[exps] = c
        object.__setattr__(self, "num_vars", num_vars)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "mode", mode)
        object.__setattr__(self, "_coeffs", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("PolyGerm is immutable")

    # -- construction helpers -------------------------------------------------

    @classmethod
    def _raw(cls, num_vars, order, coeffs, mode):
        # trusted path: coeffs already clean and truncated
        obj = PolyGerm.__new__(PolyGerm)
        object.__setattr__(obj, "num_vars", num_vars)
        object.__setattr__(obj, "order", order)
        object.__setattr__(obj, "mode", mode)
        object.__setattr__(obj, "_coeffs", coeffs)
        object.__setattr__(obj, "_hash", None)
        return obj

    @classmethod
    def zero(cls, num_vars: int, order: int = DEFAULT_ORDER, mode: str = EXACT):
        return cls(num_vars, order, {}, mode)

    @classmethod
    def constant(cls, value, num_vars: int, order: int = DEFAULT_ORDER):
        return cls(num_vars, order, {(0,) * num_vars: value})

    @classmethod
    def variable(cls, index: int, num_vars: int, order: int = DEFAULT_ORDER, mode: str = EXACT):
        exps = [0] * num_vars
        exps[index] = 1
        return cls(num_vars, order, {tuple(exps): 1}, mode)

    @classmethod
    def monomial(cls, exps: Sequence[int], coef=1, order: int = DEFAULT_ORDER):
        return cls(len(exps), order, {tuple(exps): coef})

    @classmethod
    def parse(cls, text: str, num_vars: int | None = None, order: int = DEFAULT_ORDER,
              gens: Sequence[str] | None = None):
        """Build a germ from a polynomial expression such as ``"q1^2*q2 - q2^3"``.

        Variables are taken from ``gens`` when given; otherwise the free
        symbols are sorted by name. Decimal literals are kept exact.
        """
        import sympy as sp
        from sympy.parsing.sympy_parser import (convert_xor, parse_expr,
                                                standard_transformations)

        expr = parse_expr(text.replace("**", "^"),
                          transformations=standard_transformations + (convert_xor,),
                          evaluate=True)
        expr = sp.nsimplify(expr, rational=True)
        if gens is None:
            syms = sorted(expr.free_symbols, key=lambda s: s.name)
        else:
            syms = [sp.Symbol(g) for g in gens]
        if num_vars is None:
            num_vars = max(1, len(syms))
        while len(syms) < num_vars:
            syms.append(sp.Dummy())
        if len(syms) > num_vars:
            raise ValueError(f"expression uses {len(syms)} variables, expected {num_vars}")
        poly = sp.Poly(expr, *syms)
        coeffs = {}
        for monom, c in poly.terms():
            c = sp.Rational(c)
            coeffs[tuple(monom)] = Fraction(int(c.p), int(c.q))
        return cls(num_vars, order, coeffs, EXACT)

    # -- views ------------------------------------------------------------------

    @property
    def coeffs(self) -> Mapping:
        return MappingProxyType(self._coeffs)

    @property
    def exact(self) -> bool:
        return self.mode == EXACT

    def terms(self):
        """(exps, coef) pairs in graded-lex order."""
        return sorted(self._coeffs.items(), key=lambda kv: grlex_key(kv[0]))

    def coefficient(self, exps: Sequence[int]):
        return self._coeffs.get(tuple(exps), self._zero())

    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def degree(self) -> int:
        """Largest total degree present; -1 for the zero germ."""
        return max((sum(e) for e in self._coeffs), default=-1)

    @property
    def valuation(self) -> int | None:
        """Lowest total degree present, or None for the zero germ."""
        return min((sum(e) for e in self._coeffs), default=None)

    def homogeneous(self, d: int) -> "PolyGerm":
        return self._raw(self.num_vars, self.order,
                         {e: c for e, c in self._coeffs.items() if sum(e) == d}, self.mode)

    def truncate(self, order: int) -> "PolyGerm":
        order = min(order, self.order)
        return self._raw(self.num_vars, order,
                         {e: c for e, c in self._coeffs.items() if sum(e) <= order}, self.mode)

    def with_order(self, order: int) -> "PolyGerm":
        """Reinterpret the stored polynomial with a different truncation degree."""
        return PolyGerm(self.num_vars, order, self._coeffs, self.mode)

    def to_float(self) -> "PolyGerm":
        return PolyGerm(self.num_vars, self.order,
                        {e: float(c) for e, c in self._coeffs.items()}, FLOAT)

    def to_exact(self) -> "PolyGerm":
        return PolyGerm(self.num_vars, self.order,
                        {e: Fraction(c) for e, c in self._coeffs.items()}, EXACT)

    def _zero(self):
        return Fraction(0) if self.mode == EXACT else 0.0

    # -- arithmetic -------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, PolyGerm):
            if other.num_vars != self.num_vars:
                raise ValueError("germs have different numbers of variables")
            return other
        if isinstance(other, numbers.Number):
            return PolyGerm(self.num_vars, self.order, {(0,) * self.num_vars: other})
        return NotImplemented

    def _mode_with(self, other):
        return EXACT if self.mode == EXACT and other.mode == EXACT else FLOAT

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        order = min(self.order, other.order)
        mode = self._mode_with(other)
        out = {}
        for src in (self._coeffs, other._coeffs):
            for e, c in src.items():
                if sum(e) <= order:
                    out[e] = out.get(e, 0) + c
        return PolyGerm(self.num_vars, order, out, mode)

    __radd__ = __add__

    def __neg__(self):
        return self._raw(self.num_vars, self.order,
                         {e: -c for e, c in self._coeffs.items()}, self.mode)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, numbers.Number):
            if _is_float_like(other) or self.mode == FLOAT:
                return PolyGerm(self.num_vars, self.order,
                                {e: float(c) * float(other) for e, c in self._coeffs.items()}, FLOAT)
            k = _to_exact(other)
            return PolyGerm(self.num_vars, self.order,
                            {e: c * k for e, c in self._coeffs.items()}, EXACT)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        order = min(self.order, other.order)
        return self._raw(self.num_vars, order, _mul(self._coeffs, other._coeffs, order),
                         self._mode_with(other))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = PolyGerm.constant(1, self.num_vars, self.order)
        if self.mode == FLOAT:
            result = result.to_float()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, numbers.Number):
            other = PolyGerm.constant(other, self.num_vars, self.order) if other else \
                PolyGerm.zero(self.num_vars, self.order)
        if not isinstance(other, PolyGerm):
            return NotImplemented
        return (self.num_vars == other.num_vars and self.order == other.order
                and self._coeffs == other._coeffs)

    def __hash__(self):
        if self._hash is None:
            h = hash((self.num_vars, self.order, frozenset(self._coeffs.items())))
            object.__setattr__(self, "_hash", h)
        return self._hash

    def __call__(self, *point):
        if len(point) == 1 and isinstance(point[0], (tuple, list)):
            point = tuple(point[0])
        return evaluate(self, point)

    # -- printing -------------------------------------------------------------

    def to_str(self, names: Sequence[str] | None = None) -> str:
        if names is None:
            names = ["x"] if self.num_vars == 1 else [f"x{i + 1}" for i in range(self.num_vars)]
        if not self._coeffs:
            return "0"
        parts = []
        for exps, c in self.terms():
            mon = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, exps) if k)
            if mon:
                if c == 1:
                    s = mon
                elif c == -1:
                    s = "-" + mon
                else:
                    s = f"{_fmt(c)}*{mon}"
            else:
                s = _fmt(c)
            parts.append(s)
        out = " + ".join(parts)
        return out.replace("+ -", "- ")

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"PolyGerm({self.to_str()!s}, vars={self.num_vars}, order={self.order}, {self.mode})"

    # -- serialisation --------------------------------------------------------

    def to_dict(self) -> dict:
        terms = []
        for exps, c in self.terms():
            coef = f"{c.numerator}/{c.denominator}" if self.mode == EXACT else float(c)
            terms.append({"exps": list(exps), "coef": coef})
        return {"vars": self.num_vars, "order": self.order, "terms": terms}

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, data: Mapping, default_order: int = DEFAULT_ORDER) -> "PolyGerm":
        try:
            num_vars = int(data["vars"])
            order = int(data.get("order", default_order))
            raw_terms = data["terms"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed germ record: {exc}") from None
        coeffs = {}
        floats = False
        for t in raw_terms:
            exps = tuple(int(k) for k in t["exps"])
            coef = t["coef"]
            if isinstance(coef, str):
                coef = Fraction(coef)
            elif isinstance(coef, bool):
                raise ValueError("boolean coefficient")
            elif isinstance(coef, int):
                coef = Fraction(coef)
            elif isinstance(coef, float):
                floats = True
            else:
                raise ValueError(f"bad coefficient {coef!r}")
            coeffs[exps] = coeffs.get(exps, 0) + coef
        return cls(num_vars, order, coeffs, FLOAT if floats else EXACT)

    @classmethod
    def from_json(cls, text: str, default_order: int = DEFAULT_ORDER) -> "PolyGerm":
        return cls.from_dict(json.loads(text), default_order)


def _fmt(c) -> str:
    if isinstance(c, Fraction):
        return str(c.numerator) if c.denominator == 1 else f"({c})"
    return repr(float(c))


def _mul(a: Mapping, b: Mapping, order: int) -> dict:
    out: dict = {}
    if not a or not b:
        return out
    bl = sorted(((sum(e), e, c) for e, c in b.items()), key=lambda t: t[0])
    for ea, ca in a.items():
        da = sum(ea)
        room = order - da
        if room < 0:
            continue
        for db, eb, cb in bl:
            if db > room:
                break
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c != 0}


class OddGerm(PolyGerm):
    """A germ whose stored monomials all have odd total degree."""

    __slots__ = ()

    def __init__(self, num_vars: int, order: int = DEFAULT_ORDER,
                 coeffs: Mapping | None = None, mode: str | None = None):
        super().__init__(num_vars, order, coeffs, mode)
        bad = [e for e in self._coeffs if sum(e) % 2 == 0]
        if bad:
            raise ValueError(f"not an odd germ: even-degree monomials {sorted(bad)}")

    @classmethod
    def of(cls, g: PolyGerm) -> "OddGerm":
        if isinstance(g, OddGerm):
            return g
        return cls(g.num_vars, g.order, g.coeffs, g.mode)

    @property
    def is_singular(self) -> bool:
        return all(sum(e) >= 3 for e in self._coeffs)


def is_odd(g: PolyGerm) -> bool:
    return all(sum(e) % 2 == 1 for e in g.coeffs)


# -- operations ---------------------------------------------------------------

def partial(g: PolyGerm, var_index: int, times: int = 1) -> PolyGerm:
    """Formal partial derivative; the truncation order drops by ``times``."""
    if not 0 <= var_index < g.num_vars:
        raise IndexError(f"variable index {var_index} out of range for {g.num_vars} variables")
    if times < 0:
        raise ValueError("times must be >= 0")
    if times == 0:
        return g
    out = {}
    for exps, c in g.coeffs.items():
        k = exps[var_index]
        if k < times:
            continue
        fall = 1
        for j in range(times):
            fall *= k - j
        e = list(exps)
        e[var_index] = k - times
        out[tuple(e)] = c * fall
    return PolyGerm(g.num_vars, max(g.order - times, 0), out, g.mode)


def derivative_value(g: PolyGerm, exps: Sequence[int]):
    """Value at the origin of the mixed partial with multi-index ``exps``.

    Equals the coefficient of ``x**exps`` times ``prod(k!)``.
    """
    c = g.coefficient(exps)
    f = 1
    for k in exps:
        for j in range(2, k + 1):
            f *= j
    return c * f


def parity_split(g: PolyGerm) -> tuple[PolyGerm, PolyGerm]:
    """Split into (even part, odd part) by total degree of each monomial."""
    even = {e: c for e, c in g.coeffs.items() if sum(e) % 2 == 0}
    odd = {e: c for e, c in g.coeffs.items() if sum(e) % 2 == 1}
    return (PolyGerm._raw(g.num_vars, g.order, even, g.mode),
            OddGerm(g.num_vars, g.order, odd, g.mode))


def substitute(g: PolyGerm, polys: Sequence[PolyGerm], order: int | None = None) -> PolyGerm:
    """Compose ``g`` with the polynomial map ``polys`` (one entry per variable of g).

    The result lives in the variables of ``polys`` and is truncated at
    ``order`` (default: ``g.order``). Truncation is applied after every
    multiplication.
    """
    if len(polys) != g.num_vars:
        raise ValueError(f"need {g.num_vars} component polynomials, got {len(polys)}")
    nv = polys[0].num_vars
    if any(p.num_vars != nv for p in polys):
        raise ValueError("component polynomials must share their variables")
    if order is None:
        order = g.order
    mode = EXACT if g.mode == EXACT and all(p.mode == EXACT for p in polys) else FLOAT
    # lowest degree in each component lets us stop multiplying early
    vals = [p.valuation for p in polys]
    one = {(0,) * nv: (Fraction(1) if mode == EXACT else 1.0)}
    maxexp = [max((e[i] for e in g.coeffs), default=0) for i in range(g.num_vars)]
    powers = []
    for i, p in enumerate(polys):
        pw = [one]
        for _ in range(maxexp[i]):
            pw.append(_mul(pw[-1], p._coeffs, order))
        powers.append(pw)

    def lowdeg(i, k):
        v = vals[i]
        return 0 if k == 0 else (order + 1 if v is None else v * k)

    out: dict = {}
    for exps, c in g.coeffs.items():
        if sum(lowdeg(i, k) for i, k in enumerate(exps)) > order:
            continue
        term = {e: c * v for e, v in powers[0][exps[0]].items()}
        for i in range(1, g.num_vars):
            if exps[i]:
                term = _mul(term, powers[i][exps[i]], order)
        for e, v in term.items():
            out[e] = out.get(e, 0) + v
    return PolyGerm(nv, order, out, mode)


def compose_linear(g: PolyGerm, M) -> PolyGerm:
    """Return ``g(M x)`` for an invertible 2x2 matrix ``M``."""
    if g.num_vars != 2:
        raise ValueError("compose_linear expects a germ in two variables")
    (a, b), (c, d) = M
    mode = g.mode
    if any(_is_float_like(v) for v in (a, b, c, d)):
        mode = FLOAT
    det = a * d - b * c
    if det == 0:
        raise ValueError("singular linear map")
    mk = (lambda v: _to_exact(v)) if mode == EXACT else float
    x1 = PolyGerm(2, g.order, {(1, 0): mk(a), (0, 1): mk(b)}, mode)
    x2 = PolyGerm(2, g.order, {(1, 0): mk(c), (0, 1): mk(d)}, mode)
    return substitute(g, [x1, x2])


def linear_part(phi: Sequence[PolyGerm]):
    n = len(phi)
    return [[p.coefficient(tuple(int(i == j) for i in range(n))) for j in range(n)] for p in phi]


def _det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    return sum((-1) ** j * m[0][j] * _det([row[:j] + row[j + 1:] for row in m[1:]])
               for j in range(n))


def compose_odd_diffeo(g: PolyGerm, phi: Sequence[PolyGerm]) -> PolyGerm:
    """Return ``g o phi`` for an odd diffeomorphism germ ``phi``."""
    phi = list(phi)
    if len(phi) != g.num_vars:
        raise ValueError(f"diffeo must have {g.num_vars} components")
    for p in phi:
        if p.num_vars != g.num_vars:
            raise ValueError("diffeo components must live in the same variables as g")
        if not is_odd(p):
            raise ValueError("diffeo component is not odd")
    if _det(linear_part(phi)) == 0:
        raise ValueError("diffeo has a non-invertible linear part")
    return substitute(g, phi)


def translate(g: PolyGerm, point: Sequence) -> PolyGerm:
    """Re-expand ``g`` around ``point``: returns ``u -> g(point + u)``."""
    if len(point) != g.num_vars:
        raise ValueError("point has the wrong dimension")
    n = g.num_vars
    mode = g.mode
    if any(_is_float_like(v) for v in point):
        mode = FLOAT
    comps = []
    for i, v in enumerate(point):
        e = [0] * n
        e[i] = 1
        comps.append(PolyGerm(n, g.order, {tuple(e): 1, (0,) * n: v}, mode))
    return substitute(g, comps)


def evaluate(g: PolyGerm, point: Sequence):
    """Value of ``g`` at ``point``.

    Works with exact scalars, floats, or numpy arrays (broadcast). In float
    mode the polynomial is evaluated by nested Horner schemes, one variable
    at a time.
    """
    point = tuple(point)
    if len(point) != g.num_vars:
        raise ValueError(f"point must have {g.num_vars} coordinates")
    if g.mode == EXACT and all(isinstance(v, numbers.Rational) for v in point):
        total = Fraction(0)
        for exps, c in g.coeffs.items():
            t = c
            for v, k in zip(point, exps):
                if k:
                    t *= Fraction(v) ** k
            total += t
        return total
    return _horner(dict(g.coeffs), point, 0)


def _horner(coeffs: dict, point, var: int):
    if var == len(point) - 1:
        if not coeffs:
            return 0.0 * point[var]
        top = max(e[var] for e in coeffs)
        by = [0.0] * (top + 1)
        for e, c in coeffs.items():
            by[e[var]] += float(c)
        acc = by[top] + 0.0 * point[var]
        for k in range(top - 1, -1, -1):
            acc = acc * point[var] + by[k]
        return acc
    groups: dict = {}
    for e, c in coeffs.items():
        groups.setdefault(e[var], {})[e] = c
    if not groups:
        return 0.0 * point[var]
    top = max(groups)
    acc = None
    for k in range(top, -1, -1):
        inner = _horner(groups.get(k, {}), point, var + 1)
        acc = inner if acc is None else acc * point[var] + inner
    return acc


def monomial_basis(num_vars: int, parity: str = "all", min_deg: int = 0,
                   max_deg: int = DEFAULT_ORDER) -> list[tuple]:
    """Exponent tuples with total degree in [min_deg, max_deg], graded-lex ordered.

    ``parity`` filters on total degree: ``"odd"``, ``"even"`` or ``"all"``.
    """
    if min_deg > max_deg:
        raise ValueError("min_deg must not exceed max_deg")
    if parity not in ("odd", "even", "all"):
        raise ValueError(f"unknown parity {parity!r}")
    out = []
    for d in range(max(min_deg, 0), max_deg + 1):
        if parity == "odd" and d % 2 == 0:
            continue
        if parity == "even" and d % 2 == 1:
            continue
        out.extend(_compositions(d, num_vars))
    return out


def _compositions(d: int, n: int) -> list[tuple]:
    if n == 1:
        return [(d,)]
    out = []
    for k in range(d, -1, -1):
        for rest in _compositions(d - k, n - 1):
            out.append((k,) + rest)
    return out


def potential(forms: Sequence[PolyGerm], order: int | None = None) -> PolyGerm:
    """Polynomial g with dg = sum_i forms[i] dx_i, g(0) = 0.

    Assumes the 1-form is closed; each homogeneous piece of degree d
    integrates to ``sum_i x_i * h_i / (d + 1)`` (Euler's identity).
    """
    n = len(forms)
    if order is None:
        order = min(h.order for h in forms) + 1
    mode = EXACT if all(h.mode == EXACT for h in forms) else FLOAT
    out: dict = {}
    for i, h in enumerate(forms):
        for exps, c in h.coeffs.items():
            d = sum(exps)
            e = list(exps)
            e[i] += 1
            e = tuple(e)
            scale = Fraction(1, d + 1) if mode == EXACT else 1.0 / (d + 1)
            out[e] = out.get(e, 0) + c * scale
    return PolyGerm(n, order, out, mode)


def binomial(n: int, k: int) -> int:
    return comb(n, k)


def random_rational_germ(rng, num_vars: int, degrees: Iterable[int], order: int = DEFAULT_ORDER,
                         bound: int = 5, density: float = 1.0) -> PolyGerm:
    """Random exact germ with small integer-ratio coefficients in the given degrees."""
    coeffs = {}
    for d in degrees:
        for e in _compositions(d, num_vars):
            if rng.random() < density:
                num = int(rng.integers(-bound, bound + 1))
                den = int(rng.integers(1, bound + 1))
                coeffs[e] = Fraction(num, den)
    return PolyGerm(num_vars, order, coeffs, EXACT)


__all__ = [
    "DEFAULT_ORDER", "EXACT", "FLOAT", "PolyGerm", "OddGerm", "partial", "parity_split",
    "compose_linear", "compose_odd_diffeo", "substitute", "translate", "evaluate",
    "monomial_basis", "potential", "derivative_value", "grlex_key", "is_odd",
    "linear_part", "random_rational_germ", "binomial",
]
