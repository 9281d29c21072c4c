"""Tautological classes on powers of Y and the presentation of their span.

Generators on Y^m are h_i (pulled-back hyperplane class), o_i (pulled-back
point class) and tau_ij (pulled-back middle Kuenneth projector).  All have
even degree, so the abstract algebra they generate is an ordinary
commutative polynomial ring modulo relations.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .corr import decomposable, diagonal
from .report import FAIL, PASS, SKIPPED_CAP, CheckResult, Report
from .supalg import (
    CohClass,
    SpaceSpec,
    embed,
    h_power,
    make_space,
    mul,
    point_class,
    pullback_proj,
)

DEFAULT_CAP = 200_000


class CapExceeded(RuntimeError):
    """A combinatorial enumeration would exceed the configured term cap."""

    def __init__(self, what: str, size: int, cap: int):
        super().__init__(f"{what}: {size} terms exceeds cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap


# -- generators in cohomology --------------------------------------------------


def tau_class(space: SpaceSpec) -> CohClass:
    """Diagonal minus its even Kuenneth part, on X^2."""
    top = space.top_power
    tau = diagonal(space).carrier
    for j in range(top + 1):
        even = decomposable(space, h_power(space, j), h_power(space, top - j))
        tau = tau - even.carrier.scale(1 / space.top_intersection)
    return tau


@dataclass(frozen=True, eq=False)
class TautGenerators:
    space: SpaceSpec
    m: int
    h: dict  # i -> class
    o: dict  # i -> class
    tau: dict  # (i, j), i < j -> class

    @property
    def g(self) -> int:
        return self.space.g

    @property
    def b(self) -> int:
        return self.space.odd_rank

    def tau_ij(self, i: int, j: int) -> CohClass:
        return self.tau[min(i, j), max(i, j)]

    def value(self, gen: tuple) -> CohClass:
        kind = gen[0]
        if kind == "h":
            return self.h[gen[1]]
        if kind == "o":
            return self.o[gen[1]]
        return self.tau_ij(gen[1], gen[2])


def build_generators(g: int, m: int, kind="Y") -> TautGenerators:
    if m < 1:
        raise ValueError("m must be positive")
    space = make_space(kind, g)
    tau = tau_class(space)
    return TautGenerators(
        space,
        m,
        {i: h_power(space, 1, i, m) for i in range(1, m + 1)},
        {i: point_class(space, i, m) for i in range(1, m + 1)},
        {
            (i, j): pullback_proj(tau, (i, j), m)
            for i, j in itertools.combinations(range(1, m + 1), 2)
        },
    )


def verify_relations(gens: TautGenerators) -> Report:
    """Check the quadratic/cubic relations among o_i, h_i, tau_ij exactly.

    In the Y model the top-power relation reads h^(2g-1) = 4 o; in general the
    power is the top even power and the coefficient the top intersection.
    """
    space, m = gens.space, gens.m
    top, vol, b = space.top_power, space.top_intersection, gens.b
    base = {"g": space.g, "m": m, "kind": space.kind.value}
    zero = CohClass.zero(space, m)
    rep = Report()
    groups: dict = {}

    def record(name, index, lhs, rhs):
        groups.setdefault(name, []).append((index, lhs - rhs))

    for i in range(1, m + 1):
        h, o = gens.h[i], gens.o[i]
        record("o.o", (i,), o * o, zero)
        record("h.o", (i,), h * o, zero)
        record("h^top", (i,), h ** top, o.scale(vol))
    for i, j in itertools.permutations(range(1, m + 1), 2):
        t = gens.tau_ij(i, j)
        record("tau.o", (i, j), t * gens.o[i], zero)
        record("tau.h", (i, j), t * gens.h[i], zero)
        record("tau^2", (i, j), t * t, (gens.o[i] * gens.o[j]).scale(-b))
    for i, j, k in itertools.permutations(range(1, m + 1), 3):
        record(
            "tau.tau",
            (i, j, k),
            gens.tau_ij(i, j) * gens.tau_ij(i, k),
            gens.tau_ij(j, k) * gens.o[i],
        )
    for name, items in groups.items():
        bad = [(idx, d) for idx, d in items if not d.is_zero()]
        rep.add(
            CheckResult(
                f"taut.{name}",
                dict(base),
                FAIL if bad else PASS,
                {"instances": len(items), "failures": len(bad)},
                None if not bad else {"at": list(bad[0][0]), "class": bad[0][1]},
            )
        )
    return rep


# -- the symmetrized product of tau's ------------------------------------------


def symmetrized_tau_sum(
    g: int,
    omit: tuple | None = None,
    cap: int = DEFAULT_CAP,
    kind="Y",
    method: str = "subsets",
) -> CohClass:
    """sum over sigma in S_{b+2} of prod_i tau_{sigma(2i-1), sigma(2i)} on Y^(b+2).

    ``omit`` drops one permutation (given as its image tuple) from the sum.
    ``method="subsets"`` factors the sum by distributivity over the set of
    indices still unused, ``method="enumerate"`` walks all permutations.
    """
    space = make_space(kind, g)
    n = space.odd_rank + 2
    size = math.factorial(n)
    if size > cap:
        raise CapExceeded(f"S_{n} sum", size, cap)
    tau = tau_class(space)
    pieces: dict = {}

    def tau_at(a, c):
        if (a, c) not in pieces:
            pieces[a, c] = embed(tau, (a, c), n)
        return pieces[a, c]

    def product(sigma):
        term = CohClass.unit(space, n)
        for a, c in zip(sigma[0::2], sigma[1::2]):
            term = mul(term, tau_at(a, c))
        return term

    if method == "enumerate":
        total = CohClass.zero(space, n)
        for sigma in itertools.permutations(range(1, n + 1)):
            total = total + product(sigma)
    elif method == "subsets":
        unit = CohClass.unit(space, n)

        @functools.lru_cache(maxsize=None)
        def tail(rest: frozenset) -> CohClass:
            # sum over orderings of `rest` of the products of their pairs
            if not rest:
                return unit
            acc: dict = {}
            for a in sorted(rest):
                for c in sorted(rest - {a}):
                    for w, v in mul(tau_at(a, c), tail(rest - {a, c})).terms.items():
                        acc[w] = acc.get(w, 0) + v
            return CohClass(space, n, acc)

        total = tail(frozenset(range(1, n + 1)))
    else:
        raise ValueError(f"unknown method {method!r}")
    if omit is not None:
        omit = tuple(omit)
        if sorted(omit) != list(range(1, n + 1)):
            raise ValueError(f"{omit} is not a permutation of 1..{n}")
        total = total - product(omit)
    return total


# -- abstract presentation vs image in cohomology -----------------------------


def generator_list(m: int) -> list:
    gens = [("h", i) for i in range(1, m + 1)]
    gens += [("o", i) for i in range(1, m + 1)]
    gens += [("t", i, j) for i, j in itertools.combinations(range(1, m + 1), 2)]
    return gens


def generator_weight(space: SpaceSpec, gen: tuple) -> int:
    """Cohomological degree of a generator."""
    return 2 if gen[0] == "h" else space.top_degree


def _monomials_by_degree(weights: list, max_degree: int, cap: int) -> dict:
    """Exponent vectors grouped by weighted degree, up to max_degree."""
    out = {0: [tuple([0] * len(weights))]}
    seen = 1
    # grow by multiplying with generators in nondecreasing index order
    frontier = [(tuple([0] * len(weights)), 0, 0)]
    while frontier:
        nxt = []
        for exps, deg, start in frontier:
            for k in range(start, len(weights)):
                d = deg + weights[k]
                if d > max_degree:
                    continue
                e = list(exps)
                e[k] += 1
                e = tuple(e)
                out.setdefault(d, []).append(e)
                nxt.append((e, d, k))
                seen += 1
                if seen > cap:
                    raise CapExceeded("monomial enumeration", seen, cap)
        frontier = nxt
    return out


def image_hilbert(g: int, m: int, cap: int = DEFAULT_CAP, kind="Y") -> dict:
    """Degree -> dimension of the span of generator monomials in H*(Y^m)."""
    gens = build_generators(g, m, kind)
    space = gens.space
    names = generator_list(m)
    weights = [generator_weight(space, x) for x in names]
    top = m * space.top_degree
    monos = _monomials_by_degree(weights, top, cap)

    @functools.lru_cache(maxsize=None)
    def value(exps):
        if not any(exps):
            return CohClass.unit(space, m)
        k = max(i for i, e in enumerate(exps) if e)
        prev = list(exps)
        prev[k] -= 1
        return mul(value(tuple(prev)), gens.value(names[k]))

    dims = {}
    for d in range(0, top + 1, 2):
        rows = [value(e).terms for e in monos.get(d, [])]
        dims[d] = linalg.rank(rows)
    value.cache_clear()
    return dims


RELATION_FAMILIES = ("X1", "X2", "X3", "X4")


def abstract_relations(space: SpaceSpec, m: int, drop: tuple = ()) -> list:
    """Relations as polynomials {exponent vector: coefficient} in the generators."""
    names = generator_list(m)
    index = {x: k for k, x in enumerate(names)}
    n = len(names)
    top, vol, b = space.top_power, space.top_intersection, space.odd_rank

    def mono(*factors):
        e = [0] * n
        for x in factors:
            e[index[x]] += 1
        return tuple(e)

    def t(i, j):
        return ("t", min(i, j), max(i, j))

    rels = []
    if "X1" not in drop:
        for i in range(1, m + 1):
            rels.append({mono(("o", i), ("o", i)): 1})
            rels.append({mono(("h", i), ("o", i)): 1})
            rels.append({mono(*[("h", i)] * top): 1, mono(("o", i)): -vol})
    if "X2" not in drop:
        for i, j in itertools.permutations(range(1, m + 1), 2):
            rels.append({mono(t(i, j), ("o", i)): 1})
            rels.append({mono(t(i, j), ("h", i)): 1})
            if i < j:
                rels.append({mono(t(i, j), t(i, j)): 1, mono(("o", i), ("o", j)): b})
    if "X3" not in drop:
        for i, j, k in itertools.permutations(range(1, m + 1), 3):
            if j > k:
                continue
            lhs, rhs = mono(t(i, j), t(i, k)), mono(t(j, k), ("o", i))
            if lhs != rhs:
                rels.append({lhs: 1, rhs: -1})
    if "X4" not in drop and m >= b + 2:
        for subset in itertools.combinations(range(1, m + 1), b + 2):
            # all permutations of a subset reduce to its perfect matchings,
            # each hit 2^(k) k! times; the common factor is dropped
            rel: dict = {}
            for matching in _perfect_matchings(subset):
                key = mono(*[t(a, c) for a, c in matching])
                rel[key] = rel.get(key, 0) + 1
            rels.append(rel)
    return [{k: Fraction(v) for k, v in r.items() if v} for r in rels]


def _perfect_matchings(items):
    items = tuple(items)
    if not items:
        yield ()
        return
    first = items[0]
    for k in range(1, len(items)):
        rest = items[1:k] + items[k + 1 :]
        for sub in _perfect_matchings(rest):
            yield ((first, items[k]),) + sub


def abstract_hilbert(
    g: int,
    m: int,
    cap: int = DEFAULT_CAP,
    drop: tuple = (),
    kind="Y",
    extra_degrees: bool = True,
) -> dict:
    """Degree -> dimension of the polynomial ring modulo the relations.

    Monomial relations are applied by discarding divisible monomials; the
    remaining relations are multiplied by every monomial of the right degree
    and their span is eliminated exactly.  Degrees up to top + (largest
    generator degree) are computed so that vanishing above the top is
    certified, not assumed.
    """
    space = make_space(kind, g)
    names = generator_list(m)
    weights = [generator_weight(space, x) for x in names]
    top = m * space.top_degree
    reach = top + (max(weights) if extra_degrees else 0)
    monos = _monomials_by_degree(weights, reach, cap)

    rels = abstract_relations(space, m, drop)
    killers = [next(iter(r)) for r in rels if len(r) == 1]
    others = [r for r in rels if len(r) > 1]

    def killed(e):
        return any(all(x >= y for x, y in zip(e, k)) for k in killers)

    def rel_degree(r):
        e = next(iter(r))
        return sum(w * x for w, x in zip(weights, e))

    dims = {}
    work = 0
    for d in range(0, reach + 1, 2):
        basis = [e for e in monos.get(d, []) if not killed(e)]
        if not basis:
            dims[d] = 0
            continue
        order = {e: k for k, e in enumerate(sorted(basis))}
        span = linalg.EchelonBasis(order)
        for r in others:
            rd = rel_degree(r)
            if rd > d:
                continue
            for mult in monos.get(d - rd, []):
                row = {}
                for e, c in r.items():
                    prod = tuple(x + y for x, y in zip(e, mult))
                    if prod in order:
                        row[prod] = row.get(prod, 0) + c
                row = {k: v for k, v in row.items() if v}
                if row:
                    span.add(row)
                work += 1
                if work > cap * 10:
                    raise CapExceeded("relation multiples", work, cap * 10)
        dims[d] = len(basis) - span.rank
    return dims


def injectivity_report(g: int, m: int, cap: int = DEFAULT_CAP, drop: tuple = ()) -> Report:
    params = {"g": g, "m": m}
    if drop:
        params["dropped"] = list(drop)
    image = image_hilbert(g, m, cap)
    abstract = abstract_hilbert(g, m, cap, drop)
    top = max(image)
    mismatches = [
        d for d in sorted(set(image) | set(abstract)) if image.get(d, 0) != abstract.get(d, 0)
    ]
    above = {d: v for d, v in abstract.items() if d > top}
    rep = Report()
    rep.add(
        CheckResult(
            "hilbert",
            params,
            FAIL if mismatches else PASS,
            {
                "image": image,
                "abstract": {d: v for d, v in abstract.items() if d <= top},
                "abstract_above_top": above,
                "mismatch_degrees": mismatches,
            },
        )
    )
    return rep


# -- curve model ---------------------------------------------------------------


def fp_class(g: int, scalar: Fraction | None = None) -> CohClass:
    """Delta_C . p_1^* K_C - scalar K_C x K_C on C^2, scalar defaulting to 1/(2g-2)."""
    if g < 2:
        raise ValueError("the canonical class normalization needs g >= 2")
    C = make_space("curve", g)
    canonical = point_class(C).scale(2 * g - 2)
    if scalar is None:
        scalar = Fraction(1, 2 * g - 2)
    delta = diagonal(C).carrier
    lhs = mul(delta, pullback_proj(canonical, (1,), 2))
    kk = mul(pullback_proj(canonical, (1,), 2), pullback_proj(canonical, (2,), 2))
    return lhs - kk.scale(scalar)
