"""Schubert calculus on Gr(k, n) plus projective-bundle dimension bookkeeping.

Classes are sparse maps partition -> rational, partitions living in the
k x (n-k) box.  Products go through Pieri's rule and the Jacobi-Trudi
(Giambelli) expansion of the second factor into special classes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .report import FAIL, PASS, CheckResult, Report


def normalize(parts) -> tuple:
    return tuple(p for p in parts if p)


@dataclass(frozen=True)
class Grassmannian:
    k: int
    n: int

    def __post_init__(self):
        if not 0 < self.k < self.n:
            raise ValueError(f"need 0 < k < n, got Gr({self.k},{self.n})")

    @property
    def width(self) -> int:
        return self.n - self.k

    @property
    def dimension(self) -> int:
        return self.k * self.width

    @property
    def top(self) -> tuple:
        return (self.width,) * self.k

    def fits(self, lam) -> bool:
        lam = normalize(lam)
        return len(lam) <= self.k and all(p <= self.width for p in lam) and all(
            a >= b for a, b in zip(lam, lam[1:])
        )

    def complement(self, lam) -> tuple:
        lam = list(lam) + [0] * (self.k - len(lam))
        return normalize(self.width - p for p in reversed(lam))

    def partitions(self, size: int | None = None) -> list:
        out = []
        for lam in itertools.combinations_with_replacement(range(self.width, -1, -1), self.k):
            lam = normalize(lam)
            if size is None or sum(lam) == size:
                out.append(lam)
        return out


class SchubertClass:
    __slots__ = ("gr", "terms")

    def __init__(self, gr: Grassmannian, terms=None):
        self.gr = gr
        clean = {}
        for lam, c in (terms or {}).items():
            lam = normalize(lam)
            if not gr.fits(lam):
                raise ValueError(f"{lam} does not fit Gr({gr.k},{gr.n})")
            c = Fraction(c)
            if c:
                clean[lam] = clean.get(lam, 0) + c
        self.terms = {l: c for l, c in clean.items() if c}

    @classmethod
    def sigma(cls, gr: Grassmannian, *parts, coef=1):
        return cls(gr, {normalize(parts): coef})

    @classmethod
    def unit(cls, gr):
        return cls(gr, {(): 1})

    def __add__(self, other):
        out = dict(self.terms)
        for l, c in other.terms.items():
            out[l] = out.get(l, 0) + c
        return SchubertClass(self.gr, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, s):
        return SchubertClass(self.gr, {l: c * s for l, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, SchubertClass):
            return mult(self, other)
        return self.scale(other)

    __rmul__ = scale

    def __eq__(self, other):
        return isinstance(other, SchubertClass) and (self.gr, self.terms) == (other.gr, other.terms)

    def is_zero(self):
        return not self.terms

    def degrees(self):
        return {sum(l) for l in self.terms}

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(
            f"{c}*s{list(l)}" for l, c in sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]))
        )


def _horizontal_strips(lam: tuple, r: int, gr: Grassmannian):
    """Partitions mu in the box with mu / lam a horizontal r-strip."""
    lam = list(lam) + [0] * (gr.k - len(lam))
    # row i may grow up to the previous row's old length (row 0 up to the width)
    bounds = [gr.width] + lam[:-1]

    def rec(i, left, acc):
        if i == gr.k:
            if left == 0:
                yield normalize(acc)
            return
        room = min(bounds[i] - lam[i], left)
        for add in range(room, -1, -1):
            yield from rec(i + 1, left - add, acc + [lam[i] + add])

    yield from rec(0, r, [])


def pieri(a: SchubertClass, r: int) -> SchubertClass:
    """Multiply by the special class sigma_r."""
    gr = a.gr
    if not 0 <= r <= gr.width:
        raise ValueError(f"sigma_{r} is not a class on Gr({gr.k},{gr.n})")
    out: dict = {}
    for lam, c in a.terms.items():
        for mu in _horizontal_strips(lam, r, gr):
            out[mu] = out.get(mu, 0) + c
    return SchubertClass(gr, out)


def _sign(perm) -> int:
    inv = sum(1 for i, j in itertools.combinations(range(len(perm)), 2) if perm[i] > perm[j])
    return -1 if inv % 2 else 1


def giambelli_terms(lam: tuple) -> list:
    """sigma_lam = det(sigma_{lam_i - i + j}) as [(sign, [special indices])]."""
    lam = normalize(lam)
    ell = len(lam)
    out = []
    for perm in itertools.permutations(range(ell)):
        idx = [lam[i] - i + perm[i] for i in range(ell)]
        if any(x < 0 for x in idx):
            continue
        out.append((_sign(perm), [x for x in idx if x]))
    return out


def mult(a: SchubertClass, b: SchubertClass) -> SchubertClass:
    if a.gr != b.gr:
        raise ValueError("classes on different Grassmannians")
    gr = a.gr
    total = SchubertClass(gr)
    for lam, c in b.terms.items():
        for sign, specials in giambelli_terms(lam):
            if any(x > gr.width for x in specials):
                continue
            term = a
            for r in specials:
                term = pieri(term, r)
                if term.is_zero():
                    break
            total = total + term.scale(sign * c)
    return total


def integrate_top(a: SchubertClass) -> Fraction:
    return a.terms.get(a.gr.top, Fraction(0))


def chern_quotient(gr: Grassmannian, j: int) -> SchubertClass:
    """c_j of the universal quotient bundle, i.e. sigma_j."""
    if not 0 <= j <= gr.width:
        return SchubertClass(gr)
    return SchubertClass.sigma(gr, j)


def fulton_to_partition(indices, n: int) -> tuple:
    """Convert a Schubert symbol (a_0 < ... < a_{k-1}) of G(k-1, n-1) to a partition.

    For lines in P^5: (2,4) -> (2,1), (2,5) -> (2,), (0,4) -> (4,1), (1,3) -> (3,2).
    """
    k = len(indices)
    return normalize((n - k) + i - a for i, a in enumerate(indices))


def fano_class(gr: Grassmannian) -> SchubertClass:
    """[F] = 16 sigma_{2,1}^2, the class of the lines on two quadrics, when it fits."""
    if not gr.fits((2, 1)):
        return SchubertClass(gr)
    s21 = SchubertClass.sigma(gr, 2, 1)
    return mult(s21, s21).scale(16)


def fano_degree(gr: Grassmannian | None = None, chern: str = "c2") -> Fraction:
    gr = gr or Grassmannian(2, 6)
    F = fano_class(gr)
    if chern == "c2":
        c = chern_quotient(gr, 2)
    elif chern == "c1^2":
        c = mult(chern_quotient(gr, 1), chern_quotient(gr, 1))
    else:
        raise ValueError(f"unknown class {chern!r}")
    return integrate_top(mult(F, c))


def fano_degree_check() -> Report:
    gr = Grassmannian(2, 6)
    F = fano_class(gr)
    value = fano_degree(gr)
    rep = Report()
    rep.add(
        CheckResult(
            "schubert",
            {"grassmannian": [gr.k, gr.n]},
            PASS if value == 16 else FAIL,
            {
                "deg_c2Q_on_F": value,
                "fano_class": {",".join(map(str, l)): c for l, c in sorted(F.terms.items())},
                "deg_c1Q_squared_on_F": fano_degree(gr, "c1^2"),
            },
        )
    )
    return rep


# -- dimension bookkeeping -----------------------------------------------------


def dimension_counts(g: int) -> Report:
    """Fiber dimensions of the projective bundles over points, pairs and lines."""
    if g < 1:
        raise ValueError("g must be positive")
    quadrics = comb(2 * g + 3, 2)  # h^0 of O(2) on P^(2g+1)
    r = 2 * quadrics - 1
    rank_e = 2 * comb(g + 1, 2)
    s = r - rank_e
    values = {
        "r": r,
        "rankE": rank_e,
        "s": s,
        "point_fiber": r - 2,
        "distinct_pair_fiber": r - 4,
        "diagonal_pair_fiber": r - 2,
    }
    checks = [
        s >= 0,
        r - 4 >= 0,
        # a point imposes one condition per quadric, two distinct points two each
        (r - 2) - (r - 4) == 2,
    ]
    if g == 2:
        # a line imposes 3 conditions per quadric, a point off it one more each
        values["line_point_off_fiber"] = r - 8
        values["line_point_on_fiber"] = r - 6
        checks += [
            values["line_point_on_fiber"] == s,
            values["line_point_on_fiber"] - values["line_point_off_fiber"] == 2,
            r - 8 >= 0,
        ]
    rep = Report()
    rep.add(CheckResult("dims", {"g": g}, PASS if all(checks) else FAIL, values))
    return rep
