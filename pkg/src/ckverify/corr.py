"""Correspondences between powers of a fixed space.

A correspondence X^a |- X^b is a class on X^(a+b); the first a factors are
the source.  Everything is computed through pullback, product and
pushforward in :mod:`ckverify.supalg`.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .supalg import (
    CohClass,
    SpaceSpec,
    basis_words,
    integrate,
    mul,
    permute,
    pullback_proj,
    pushforward_proj,
)


@dataclass(frozen=True, eq=False)
class Correspondence:
    carrier: CohClass
    source: int
    target: int

    def __post_init__(self):
        if self.carrier.arity != self.source + self.target:
            raise ValueError(
                f"carrier arity {self.carrier.arity} != {self.source} + {self.target}"
            )

    @property
    def space(self) -> SpaceSpec:
        return self.carrier.space

    def __eq__(self, other):
        if not isinstance(other, Correspondence):
            return NotImplemented
        return (self.source, self.target, self.carrier) == (
            other.source,
            other.target,
            other.carrier,
        )

    def __hash__(self):
        return hash((self.source, self.target, self.carrier))

    def __add__(self, other):
        _same_shape(self, other)
        return Correspondence(self.carrier + other.carrier, self.source, self.target)

    def __sub__(self, other):
        _same_shape(self, other)
        return Correspondence(self.carrier - other.carrier, self.source, self.target)

    def scale(self, s):
        return Correspondence(self.carrier.scale(s), self.source, self.target)

    def is_zero(self) -> bool:
        return self.carrier.is_zero()


def _same_shape(f, g):
    if (f.source, f.target) != (g.source, g.target):
        raise ValueError("correspondences of different shapes")


def act(gamma: Correspondence, alpha: CohClass) -> CohClass:
    """gamma_*(alpha) = p_{target*}(p_source^* alpha . gamma)."""
    a, b = gamma.source, gamma.target
    if alpha.arity != a:
        raise ValueError(f"act: class of arity {alpha.arity} on a {a}|-{b} correspondence")
    n = a + b
    lifted = pullback_proj(alpha, range(1, a + 1), n)
    return pushforward_proj(mul(lifted, gamma.carrier), range(a + 1, n + 1))


def compose(f: Correspondence, g: Correspondence) -> Correspondence:
    """g o f, i.e. first f then g: p_{13*}(p_{12}^* f . p_{23}^* g)."""
    if f.target != g.source:
        raise ValueError(f"compose: {f.source}|-{f.target} then {g.source}|-{g.target}")
    a, b, c = f.source, f.target, g.target
    n = a + b + c
    pf = pullback_proj(f.carrier, range(1, a + b + 1), n)
    pg = pullback_proj(g.carrier, range(a + 1, n + 1), n)
    kept = list(range(1, a + 1)) + list(range(a + b + 1, n + 1))
    return Correspondence(pushforward_proj(mul(pf, pg), kept), a, c)


def transpose(gamma: Correspondence) -> Correspondence:
    a, b = gamma.source, gamma.target
    # source block moves behind the target block
    sigma = [b + i for i in range(1, a + 1)] + list(range(1, b + 1))
    return Correspondence(permute(gamma.carrier, sigma), b, a)


def exterior_product(f: Correspondence, g: Correspondence) -> Correspondence:
    """f x g : X^(a+c) |- X^(b+d), i.e. p_{13}^* f . p_{24}^* g in block form."""
    if f.space != g.space:
        raise ValueError("exterior_product: different spaces")
    a, b, c, d = f.source, f.target, g.source, g.target
    n = a + b + c + d
    f_slots = list(range(1, a + 1)) + list(range(a + c + 1, a + c + b + 1))
    g_slots = list(range(a + 1, a + c + 1)) + list(range(a + c + b + 1, n + 1))
    return Correspondence(
        mul(pullback_proj(f.carrier, f_slots, n), pullback_proj(g.carrier, g_slots, n)),
        a + c,
        b + d,
    )


def decomposable(space: SpaceSpec, left: CohClass, right: CohClass) -> Correspondence:
    """left x right viewed as a correspondence source |- target."""
    n = left.arity + right.arity
    carrier = mul(
        pullback_proj(left, range(1, left.arity + 1), n),
        pullback_proj(right, range(left.arity + 1, n + 1), n),
    )
    return Correspondence(carrier, left.arity, right.arity)


@functools.lru_cache(maxsize=None)
def diagonal(space: SpaceSpec) -> Correspondence:
    """The class D on X^2 acting as the identity, solved from that property.

    Unknowns are the coefficients of x (x) y over basis letters of
    complementary degree; equations say D_*(alpha) = alpha for every basis
    letter alpha.
    """
    top = space.top_degree
    pairs = [w for w in basis_words(space, 2, top)]
    unknowns = pairs
    equations = []
    responses = {}
    for x, y in pairs:
        gamma = Correspondence(CohClass.monomial(space, (x, y)), 1, 1)
        responses[x, y] = {
            alpha: act(gamma, CohClass.monomial(space, (alpha,))).terms
            for alpha in space.letters
        }
    for alpha in space.letters:
        for beta in space.letters:
            row = {}
            for u in unknowns:
                c = responses[u][alpha].get((beta,))
                if c:
                    row[u] = c
            equations.append((row, 1 if alpha == beta else 0))
    sol = linalg.solve(equations, unknowns)
    return Correspondence(CohClass(space, 2, sol), 1, 1)


@functools.lru_cache(maxsize=None)
def small_diagonal(space: SpaceSpec) -> Correspondence:
    """Delta_sm as a correspondence X^2 |- X: carrier Delta_12 . Delta_23."""
    d = diagonal(space).carrier
    return Correspondence(mul(pullback_proj(d, (1, 2), 3), pullback_proj(d, (2, 3), 3)), 2, 1)


def identity_action_defects(gamma: Correspondence) -> list:
    """Basis words w with gamma_*(w) != w (empty for an identity)."""
    space = gamma.space
    bad = []
    for w in basis_words(space, gamma.source):
        alpha = CohClass.monomial(space, w)
        if act(gamma, alpha) != alpha:
            bad.append(w)
    return bad


def pairing(alpha: CohClass, beta: CohClass) -> Fraction:
    return integrate(mul(alpha, beta))
