"""Graded super-commutative cohomology of powers of a Hodge-level-1 space.

A class on X^m is a sparse map from words (one basis letter per tensor
factor) to exact rationals.  Letters are tuples:

    ('h', j)   the j-th power of the even generator, degree 2j
    ('e', i)   odd symplectic basis element, i = 1..g
    ('f', i)   its partner, with  int e_i f_j = delta_ij

Sign convention for products of words (|x| is the parity of x)::

    (a_1 x ... x a_m)(b_1 x ... x b_m)
        = (-1)^{sum_{i>j} |a_i||b_j|} (a_1 b_1 x ... x a_m b_m)
"""

from __future__ import annotations

import enum
import functools
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Letter = tuple  # ('h', j) | ('e', i) | ('f', i)
Word = tuple  # tuple of letters, one per factor

_KIND_ORDER = {"h": 0, "e": 1, "f": 2}


class SpaceKind(str, enum.Enum):
    Y = "Y"
    CURVE = "curve"


@dataclass(frozen=True)
class SpaceSpec:
    """Cohomology ring blueprint of a Y-type or curve-type space of genus g."""

    kind: SpaceKind
    g: int
    even_degrees: tuple
    top_degree: int
    top_intersection: Fraction
    odd_degree: int
    odd_rank: int

    @property
    def top_power(self) -> int:
        return len(self.even_degrees) - 1

    @property
    def dimension(self) -> int:
        """Total Betti number."""
        return len(self.even_degrees) + self.odd_rank

    @property
    def letters(self) -> tuple:
        return _letters(self)

    @property
    def product_table(self) -> dict:
        return _product_table(self)

    def degree(self, letter: Letter) -> int:
        if letter[0] == "h":
            return 2 * letter[1]
        return self.odd_degree

    def __repr__(self) -> str:
        return f"SpaceSpec({self.kind.value}, g={self.g})"


def make_space(kind, g: int) -> SpaceSpec:
    kind = SpaceKind(kind)
    if not isinstance(g, int) or g < 1:
        raise ValueError(f"genus must be a positive integer, got {g!r}")
    if kind is SpaceKind.Y:
        top_power = 2 * g - 1
        top_intersection = Fraction(4)
        odd_degree = 2 * g - 1
    else:
        top_power = 1
        top_intersection = Fraction(1)
        odd_degree = 1
    return SpaceSpec(
        kind=kind,
        g=g,
        even_degrees=tuple(2 * j for j in range(top_power + 1)),
        top_degree=2 * top_power,
        top_intersection=top_intersection,
        odd_degree=odd_degree,
        odd_rank=2 * g,
    )


@functools.lru_cache(maxsize=None)
def _letters(space: SpaceSpec) -> tuple:
    evens = [("h", j) for j in range(space.top_power + 1)]
    odds = [(k, i) for i in range(1, space.g + 1) for k in ("e", "f")]
    return tuple(evens + odds)


@functools.lru_cache(maxsize=None)
def _product_table(space: SpaceSpec) -> dict:
    """Nonzero letter products: (x, y) -> (coefficient, letter)."""
    top = space.top_power
    point = Fraction(1) / space.top_intersection
    table = {}
    for x in space.letters:
        for y in space.letters:
            if x[0] == "h" and y[0] == "h":
                if x[1] + y[1] <= top:
                    table[x, y] = (Fraction(1), ("h", x[1] + y[1]))
            elif x == ("h", 0):
                table[x, y] = (Fraction(1), y)
            elif y == ("h", 0):
                table[x, y] = (Fraction(1), x)
            elif x[0] == "h" or y[0] == "h":
                continue
            elif x[1] == y[1] and x[0] != y[0]:
                table[x, y] = (point if x[0] == "e" else -point, ("h", top))
    return table


def is_odd(letter: Letter) -> bool:
    return letter[0] != "h"


def letter_name(letter: Letter) -> str:
    kind, idx = letter
    return f"h^{idx}" if kind == "h" else f"{kind}{idx}"


def word_key(word: Word) -> tuple:
    return tuple((_KIND_ORDER[k], i) for k, i in word)


class CohClass:
    """An exact class in H*(X^m); immutable by convention."""

    __slots__ = ("space", "arity", "terms")

    def __init__(self, space: SpaceSpec, arity: int, terms: Mapping | None = None):
        if arity < 1:
            raise ValueError("arity must be positive")
        self.space = space
        self.arity = arity
        clean = {}
        for w, c in (terms or {}).items():
            if len(w) != arity:
                raise ValueError(f"word {w} does not have length {arity}")
            c = Fraction(c)
            if c:
                clean[tuple(w)] = c
        self.terms = clean

    @classmethod
    def _raw(cls, space, arity, terms):
        obj = cls.__new__(cls)
        obj.space = space
        obj.arity = arity
        obj.terms = terms
        return obj

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, space, arity):
        return cls._raw(space, arity, {})

    @classmethod
    def unit(cls, space, arity=1):
        return cls._raw(space, arity, {(("h", 0),) * arity: Fraction(1)})

    @classmethod
    def monomial(cls, space, word: Sequence, coef=1):
        return cls(space, len(word), {tuple(word): coef})

    # -- queries ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def degrees(self) -> set:
        deg = self.space.degree
        return {sum(deg(l) for l in w) for w in self.terms}

    def degree(self) -> int:
        """Degree of a homogeneous class (zero has degree 0)."""
        ds = self.degrees()
        if len(ds) > 1:
            raise ValueError(f"class is not homogeneous: degrees {sorted(ds)}")
        return ds.pop() if ds else 0

    def parity(self) -> int:
        return self.degree() % 2

    def homogeneous_part(self, d: int) -> "CohClass":
        deg = self.space.degree
        return CohClass._raw(
            self.space,
            self.arity,
            {w: c for w, c in self.terms.items() if sum(deg(l) for l in w) == d},
        )

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, CohClass):
            return NotImplemented
        if other.space != self.space or other.arity != self.arity:
            raise ValueError(
                f"incompatible classes: {self.space}^{self.arity} vs {other.space}^{other.arity}"
            )
        return True

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w, 0) + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return CohClass._raw(self.space, self.arity, out)

    def __neg__(self):
        return CohClass._raw(self.space, self.arity, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self + (-other)

    def scale(self, s) -> "CohClass":
        s = Fraction(s)
        if not s:
            return CohClass.zero(self.space, self.arity)
        return CohClass._raw(self.space, self.arity, {w: s * c for w, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, CohClass):
            return mul(self, other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int):
        out = CohClass.unit(self.space, self.arity)
        for _ in range(n):
            out = mul(out, self)
        return out

    def __eq__(self, other):
        if not isinstance(other, CohClass):
            return NotImplemented
        return (
            self.space == other.space
            and self.arity == other.arity
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.space, self.arity, frozenset(self.terms.items())))

    # -- output --------------------------------------------------------------

    def serialize(self) -> list:
        """[(letter names, numerator, denominator)] in canonical word order."""
        return [
            ([letter_name(l) for l in w], c.numerator, c.denominator)
            for w, c in sorted(self.terms.items(), key=lambda t: word_key(t[0]))
        ]

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for names, num, den in self.serialize():
            coef = str(num) if den == 1 else f"{num}/{den}"
            parts.append(f"{coef}*[{' x '.join(names)}]")
        return " + ".join(parts)


def mul(a: CohClass, b: CohClass) -> CohClass:
    """Cup product with the Koszul sign convention of the module docstring."""
    if a.space != b.space or a.arity != b.arity:
        raise ValueError("mul: space or arity mismatch")
    table = a.space.product_table
    m = a.arity
    unit = ("h", 0)
    out: dict = {}
    # only positions where the left word is not the unit need a table lookup
    b_items = [
        (wb, cb, [j for j in range(m) if wb[j][0] != "h"]) for wb, cb in b.terms.items()
    ]
    for wa, ca in a.terms.items():
        active = [(j, wa[j]) for j in range(m) if wa[j] != unit]
        # odd_after[j]: odd letters of wa strictly right of position j
        odd_after = [0] * m
        run = 0
        for j in range(m - 1, -1, -1):
            odd_after[j] = run
            if wa[j][0] != "h":
                run += 1
        for wb, cb, odd_b in b_items:
            coef = ca * cb
            word = list(wb)
            for j, x in active:
                hit = table.get((x, wb[j]))
                if hit is None:
                    break
                c, l = hit
                if c != 1:
                    coef *= c
                word[j] = l
            else:
                if run:
                    flips = 0
                    for j in odd_b:
                        flips += odd_after[j]
                    if flips & 1:
                        coef = -coef
                w = tuple(word)
                s = out.get(w, 0) + coef
                if s:
                    out[w] = s
                else:
                    del out[w]
    return CohClass._raw(a.space, m, out)


def integrate(a: CohClass) -> Fraction:
    top = ("h", a.space.top_power)
    vol = a.space.top_intersection ** a.arity
    total = Fraction(0)
    for w, c in a.terms.items():
        if all(l == top for l in w):
            total += c
    return total * vol


def _check_subset(S: Sequence[int], m: int) -> tuple:
    S = tuple(S)
    if not S or any(not 1 <= s <= m for s in S) or any(x >= y for x, y in zip(S, S[1:])):
        raise ValueError(f"index set {S} must be strictly increasing within 1..{m}")
    return S


def pullback_proj(a: CohClass, S: Sequence[int], m: int) -> CohClass:
    """Pull back along the projection X^m -> X^|S| onto the factors S (1-based)."""
    S = _check_subset(S, m)
    if len(S) != a.arity:
        raise ValueError(f"index set {S} does not match arity {a.arity}")
    unit = ("h", 0)
    slots = [s - 1 for s in S]
    out = {}
    for w, c in a.terms.items():
        word = [unit] * m
        for pos, l in zip(slots, w):
            word[pos] = l
        out[tuple(word)] = c
    return CohClass._raw(a.space, m, out)


def pushforward_proj(a: CohClass, S: Sequence[int]) -> CohClass:
    """Push forward along the projection onto the factors S, integrating out the rest."""
    m = a.arity
    S = _check_subset(S, m)
    keep = [s - 1 for s in S]
    drop = [j for j in range(m) if j + 1 not in S]
    top = ("h", a.space.top_power)
    vol = a.space.top_intersection ** len(drop)
    out: dict = {}
    for w, c in a.terms.items():
        if any(w[j] != top for j in drop):
            continue
        key = tuple(w[j] for j in keep)
        s = out.get(key, 0) + c * vol
        if s:
            out[key] = s
        else:
            del out[key]
    return CohClass._raw(a.space, len(S), out)


def _koszul_permute_word(word: Word, sigma: Sequence[int]) -> tuple:
    m = len(word)
    new = [None] * m
    for i, l in enumerate(word):
        new[sigma[i] - 1] = l
    odd = [i for i, l in enumerate(word) if l[0] != "h"]
    inversions = sum(
        1 for x, y in itertools.combinations(odd, 2) if sigma[x] > sigma[y]
    )
    return tuple(new), inversions & 1


def permute(a: CohClass, sigma: Sequence[int]) -> CohClass:
    """Move factor i to position sigma[i-1] (1-based), with Koszul signs."""
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(1, a.arity + 1)):
        raise ValueError(f"{sigma} is not a permutation of 1..{a.arity}")
    out = {}
    for w, c in a.terms.items():
        nw, odd = _koszul_permute_word(w, sigma)
        out[nw] = -c if odd else c
    return CohClass._raw(a.space, a.arity, out)


def embed(a: CohClass, positions: Sequence[int], m: int) -> CohClass:
    """Pull back along X^m -> X^k, x -> (x_{p_1}, ..., x_{p_k}) for distinct positions.

    Unlike pullback_proj the positions need not be increasing; reordering
    contributes Koszul signs.
    """
    positions = tuple(positions)
    if len(set(positions)) != len(positions) or len(positions) != a.arity:
        raise ValueError(f"bad positions {positions} for arity {a.arity}")
    order = sorted(positions)
    # factor k goes to the rank of positions[k] among the sorted positions
    rank = {p: r + 1 for r, p in enumerate(order)}
    arranged = permute(a, [rank[p] for p in positions])
    return pullback_proj(arranged, order, m)


# -- convenience constructors -------------------------------------------------


def h_power(space: SpaceSpec, j: int, pos: int = 1, m: int = 1) -> CohClass:
    """(p_pos)^* h^j on X^m; zero past the top power."""
    if j > space.top_power:
        return CohClass.zero(space, m)
    word = [("h", 0)] * m
    word[pos - 1] = ("h", j)
    return CohClass._raw(space, m, {tuple(word): Fraction(1)})


def point_class(space: SpaceSpec, pos: int = 1, m: int = 1) -> CohClass:
    """Pullback of the class o with integral 1."""
    return h_power(space, space.top_power, pos, m).scale(1 / space.top_intersection)


def letter_class(space: SpaceSpec, letters: Mapping[int, Letter], m: int) -> CohClass:
    word = [("h", 0)] * m
    for pos, l in letters.items():
        word[pos - 1] = l
    return CohClass._raw(space, m, {tuple(word): Fraction(1)})


def external(*classes: CohClass) -> CohClass:
    """a_1 x ... x a_k on X^(sum of arities), as a product of pullbacks."""
    space = classes[0].space
    m = sum(c.arity for c in classes)
    out = CohClass.unit(space, m)
    start = 1
    for c in classes:
        out = mul(out, pullback_proj(c, range(start, start + c.arity), m))
        start += c.arity
    return out


def basis_words(space: SpaceSpec, m: int, degree: int | None = None) -> list:
    """All basis words of X^m, optionally restricted to one total degree."""
    words = itertools.product(space.letters, repeat=m)
    if degree is None:
        return [tuple(w) for w in words]
    deg = space.degree
    return [tuple(w) for w in words if sum(deg(l) for l in w) == degree]


def gram_matrix(space: SpaceSpec, m: int, degree: int) -> list:
    """Pairing matrix (int u.v) between degree-d words and complementary words."""
    rows = basis_words(space, m, degree)
    cols = basis_words(space, m, m * space.top_degree - degree)
    return [
        [
            integrate(mul(CohClass.monomial(space, u), CohClass.monomial(space, v)))
            for v in cols
        ]
        for u in rows
    ]
