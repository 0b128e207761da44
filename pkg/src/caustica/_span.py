"""Incremental row echelon basis over sparse monomial vectors.

Vectors are dicts ``{exponent tuple: coefficient}``. The pivot of a vector is
its first monomial in graded-lex order, so reducing a vector against the
basis in pivot order never reintroduces an earlier pivot.
"""

from __future__ import annotations

from fractions import Fraction

from .jetcore import grlex_key


class Span:
    def __init__(self, exact: bool = True, eps: float = 1e-9):
        self.exact = exact
        self.eps = eps
        self._rows: dict = {}       # pivot -> normalised row (pivot coef 1)
        self._order: list = []      # pivots sorted by grlex key

    def __len__(self):
        return len(self._rows)

    def _small(self, c, scale) -> bool:
        if self.exact:
            return c == 0
        return abs(c) <= self.eps * scale

    def reduce(self, vec: dict) -> dict:
        v = dict(vec)
        if not v:
            return v
        scale = max(abs(float(c)) for c in v.values()) if not self.exact else 1.0
        for p in self._order:
            c = v.get(p)
            if c is None:
                continue
            if self._small(c, scale):
                del v[p]
                continue
            for e, r in self._rows[p].items():
                nv = v.get(e, 0) - c * r
                v[e] = nv
            v.pop(p, None)
            for e in [e for e, val in v.items() if self._small(val, scale)]:
                del v[e]
        return {e: c for e, c in v.items() if not self._small(c, scale)}

    def add(self, vec: dict) -> bool:
        """Insert ``vec``; returns True when it enlarged the span."""
        v = self.reduce(vec)
        if not v:
            return False
        p = min(v, key=grlex_key)
        lead = v[p]
        if self.exact:
            row = {e: Fraction(c) / lead for e, c in v.items()}
        else:
            row = {e: c / lead for e, c in v.items()}
        row[p] = Fraction(1) if self.exact else 1.0
        self._rows[p] = row
        self._order.append(p)
        self._order.sort(key=grlex_key)
        return True

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def pivots(self) -> list:
        return list(self._order)


def monomial_vec(exps) -> dict:
    return {tuple(exps): Fraction(1)}
