"""Exact sparse linear algebra over Q.

Rows are dicts {column: coefficient}.  Rank computations work on
primitive integer rows (fraction-free), so entries stay small.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Hashable, Iterable, Mapping


def _primitive(row: Mapping) -> dict:
    """Scale a rational row to a primitive integer row."""
    den = 1
    for c in row.values():
        c = Fraction(c)
        den = den * c.denominator // gcd(den, c.denominator)
    ints = {k: int(Fraction(c) * den) for k, c in row.items() if c}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
    if g > 1:
        ints = {k: v // g for k, v in ints.items()}
    return ints


class EchelonBasis:
    """Incrementally maintained echelon form of a row space.

    ``add`` reduces a new row against the existing pivots (fraction-free,
    rows kept primitive) and keeps it if it is independent.
    """

    def __init__(self, order: Mapping[Hashable, int] | None = None):
        self.pivots: dict = {}
        self._order = order

    def _lead(self, row: dict):
        if self._order is None:
            return min(row, key=_sort_key)
        return min(row, key=self._order.__getitem__)

    def reduce(self, row: Mapping) -> dict:
        r = _primitive(row)
        while r:
            lead = self._lead(r)
            piv = self.pivots.get(lead)
            if piv is None:
                return r
            a, b = r[lead], piv[lead]
            g = gcd(a, b)
            fa, fb = b // g, a // g
            new = {k: v * fa for k, v in r.items()}
            for k, v in piv.items():
                s = new.get(k, 0) - fb * v
                if s:
                    new[k] = s
                else:
                    new.pop(k, None)
            r = _primitive(new) if new else {}
        return r

    def add(self, row: Mapping) -> bool:
        r = self.reduce(row)
        if not r:
            return False
        self.pivots[self._lead(r)] = r
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)


def _sort_key(k):
    return (type(k).__name__, k)


def rank(rows: Iterable[Mapping], order: Mapping | None = None) -> int:
    basis = EchelonBasis(order)
    for row in rows:
        basis.add(row)
    return basis.rank


def dense_rank(matrix: list) -> int:
    rows = [{j: Fraction(v) for j, v in enumerate(r) if v} for r in matrix]
    return rank(rows)


def solve(equations: list, unknowns: list) -> dict:
    """Solve a linear system exactly.

    ``equations`` is a list of (row, rhs) with row a dict unknown -> coefficient.
    Returns unknown -> value; raises ValueError if the system is inconsistent
    or underdetermined.
    """
    idx = {u: i for i, u in enumerate(unknowns)}
    n = len(unknowns)
    aug = []
    for row, rhs in equations:
        r = {idx[u]: Fraction(c) for u, c in row.items() if c}
        if rhs:
            r[n] = Fraction(rhs)
        if r:
            aug.append(r)
    # Gauss-Jordan over Fractions; sizes here are tiny
    pivots: dict = {}
    for r in aug:
        r = dict(r)
        for col, prow in pivots.items():
            c = r.get(col)
            if c:
                for k, v in prow.items():
                    s = r.get(k, 0) - c * v
                    if s:
                        r[k] = s
                    else:
                        r.pop(k, None)
        if not r:
            continue
        lead = min(r)
        if lead == n:
            raise ValueError("inconsistent linear system")
        inv = 1 / r[lead]
        r = {k: v * inv for k, v in r.items()}
        for col, prow in pivots.items():
            c = prow.get(lead)
            if c:
                for k, v in r.items():
                    s = prow.get(k, 0) - c * v
                    if s:
                        prow[k] = s
                    else:
                        prow.pop(k, None)
        pivots[lead] = r
    if len(pivots) != n:
        raise ValueError(f"underdetermined system: rank {len(pivots)} < {n} unknowns")
    return {u: pivots[i].get(n, Fraction(0)) for u, i in idx.items()}
