"""Chow-Kuenneth projectors of an intersection of two quadrics, checked in cohomology.

Projectors are indexed by cohomological degree: the even ones
``(1/4) h^(2g-1-j) x h^j`` sit in degree 2j, the middle one is the
diagonal minus all even ones and sits in degree 2g-1.
"""

from __future__ import annotations

import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .corr import (
    Correspondence,
    act,
    compose,
    decomposable,
    diagonal,
    exterior_product,
    small_diagonal,
)
from .report import FAIL, PASS, CheckResult, Report
from .supalg import CohClass, SpaceSpec, basis_words, h_power, integrate, make_space, mul


class NotDecomposable(ArithmeticError):
    """Raised when a class has a residue outside the decomposable span."""

    def __init__(self, message, residue):
        super().__init__(message)
        self.residue = residue


@dataclass(eq=False)
class CKDecomposition:
    g: int
    space: SpaceSpec
    projectors: dict
    _stages: dict = field(default_factory=dict, repr=False)

    @property
    def degrees(self) -> list:
        return sorted(self.projectors)

    def __getitem__(self, k: int) -> Correspondence:
        return self.projectors[k]


def build_ck(g: int) -> CKDecomposition:
    Y = make_space("Y", g)
    top = Y.top_power
    quarter = Fraction(1, 4)
    projectors = {}
    for j in range(top + 1):
        projectors[2 * j] = decomposable(Y, h_power(Y, top - j).scale(quarter), h_power(Y, j))
    middle = diagonal(Y)
    for p in projectors.values():
        middle = middle - p
    projectors[top] = middle
    return CKDecomposition(g, Y, dict(sorted(projectors.items())))


def _first(items):
    return next(iter(items), None)


def verify_ck(d: CKDecomposition) -> Report:
    """Completeness, idempotency, orthogonality and Kuenneth image, one entry each."""
    Y = d.space
    params = {"g": d.g}
    report = Report()

    total = None
    for p in d.projectors.values():
        total = p if total is None else total + p
    residue = total.carrier - diagonal(Y).carrier
    report.add(
        CheckResult(
            "ck.completeness",
            dict(params),
            PASS if residue.is_zero() else FAIL,
            {"projectors": len(d.projectors)},
            None if residue.is_zero() else residue,
        )
    )

    bad_idem = []
    bad_orth = []
    for k, l in itertools.product(d.degrees, repeat=2):
        comp = compose(d[k], d[l])
        if k == l:
            diff = comp.carrier - d[k].carrier
            if not diff.is_zero():
                bad_idem.append((k, diff))
        elif not comp.is_zero():
            bad_orth.append(((k, l), comp.carrier))
    for name, bad, count in (
        ("ck.idempotent", bad_idem, len(d.degrees)),
        ("ck.orthogonal", bad_orth, len(d.degrees) * (len(d.degrees) - 1)),
    ):
        first = _first(bad)
        report.add(
            CheckResult(
                name,
                dict(params),
                FAIL if bad else PASS,
                {"checked": count, "failures": len(bad)},
                None if first is None else {"at": first[0], "class": first[1]},
            )
        )

    # (pi^k)_* is the projection onto H^k on every basis element
    bad_image = []
    for k in d.degrees:
        for w in basis_words(Y, 1):
            alpha = CohClass.monomial(Y, w)
            expected = alpha if alpha.degree() == k else CohClass.zero(Y, 1)
            got = act(d[k], alpha)
            if got != expected:
                bad_image.append(((k, w), got))
    first = _first(bad_image)
    report.add(
        CheckResult(
            "ck.kunneth-image",
            dict(params),
            FAIL if bad_image else PASS,
            {"checked": len(d.degrees) * Y.dimension, "failures": len(bad_image)},
            None if first is None else {"at": [first[0][0], list(map(list, first[0][1]))], "class": first[1]},
        )
    )
    return report


def _stage(d: CKDecomposition, i: int, j: int) -> Correspondence:
    """Delta_sm o (pi^i x pi^j), memoized on the decomposition."""
    key = (i, j)
    if key not in d._stages:
        d._stages[key] = compose(exterior_product(d[i], d[j]), small_diagonal(d.space))
    return d._stages[key]


def mck_defect(d: CKDecomposition, i: int, j: int, k: int) -> CohClass:
    """Carrier of pi^k o Delta_sm o (pi^i x pi^j) on Y^3.

    A degree inside 0..dim_R Y with H^deg = 0 has the zero projector, so the
    defect is zero there; degrees outside that range are rejected.
    """
    top = d.space.top_degree
    for deg in (i, j, k):
        if not isinstance(deg, int) or not 0 <= deg <= top:
            raise ValueError(f"degree {deg} is outside 0..{top} for g={d.g}")
    if any(deg not in d.projectors for deg in (i, j, k)):
        return CohClass.zero(d.space, 3)
    return compose(_stage(d, i, j), d[k]).carrier


def _defects_for_pair(args):
    g, i, j = args
    d = build_ck(g)
    return [(i, j, k, mck_defect(d, i, j, k)) for k in d.degrees]


def mck_full_check(d: CKDecomposition, workers: int = 1) -> Report:
    """Every triple with i + j != k must give an exactly zero defect."""
    pairs = list(itertools.product(d.degrees, repeat=2))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_defects_for_pair, [(d.g, i, j) for i, j in pairs]))
    else:
        chunks = [[(i, j, k, mck_defect(d, i, j, k)) for k in d.degrees] for i, j in pairs]
    results = sorted((r for chunk in chunks for r in chunk), key=lambda r: r[:3])

    off_grade = [(i, j, k, c) for i, j, k, c in results if i + j != k]
    nonzero_off = [r for r in off_grade if not r[3].is_zero()]
    on_grade_nonzero = [(i, j, k) for i, j, k, c in results if i + j == k and not c.is_zero()]
    first = _first(nonzero_off)
    report = Report()
    report.add(
        CheckResult(
            "mck",
            {"g": d.g},
            FAIL if nonzero_off else PASS,
            {
                "triples": len(off_grade),
                "nonzero_defects": len(nonzero_off),
                "nonzero_graded_triples": len(on_grade_nonzero),
            },
            None if first is None else {"at": list(first[:3]), "class": first[3]},
        )
    )
    return report


def _hyp_basis(Y: SpaceSpec, i: int, j: int) -> tuple:
    """Exponents of the i-th decomposable term h^i x h^(2g-i) (mirrored for j = 2)."""
    n = 2 * Y.g
    return (i, n - i) if j == 1 else (n - i, i)


def hyp_coefficients(g: int, j: int = 1) -> list:
    """Coefficients a_1..a_2g with Delta . p_j^* h = sum a_i h^i x h^(2g-i).

    The term i = 2g involves h^(2g) = 0, so cohomology leaves its coefficient
    free; it is read off the untruncated Kuenneth expansion of the diagonal's
    even part, which also has to agree with every determined coefficient.
    """
    if j not in (1, 2):
        raise ValueError("j must be 1 or 2")
    Y = make_space("Y", g)
    top = Y.top_power
    D = diagonal(Y).carrier
    lhs = mul(D, h_power(Y, 1, j, 2))

    # formal product of the even part, without truncating h^(2g)
    formal: dict = {}
    for w, c in D.terms.items():
        if all(l[0] == "h" for l in w):
            exps = [l[1] for l in w]
            exps[j - 1] += 1
            formal[tuple(exps)] = formal.get(tuple(exps), 0) + c

    coeffs = []
    fitted = CohClass.zero(Y, 2)
    for i in range(1, 2 * g + 1):
        a, b = _hyp_basis(Y, i, j)
        lifted = formal.get((a, b), Fraction(0))
        if a > top or b > top:
            coeffs.append(lifted)
            continue
        term = mul(h_power(Y, a, 1, 2), h_power(Y, b, 2, 2))
        dual = mul(h_power(Y, top - a, 1, 2), h_power(Y, top - b, 2, 2))
        coef = integrate(mul(lhs, dual)) / integrate(mul(term, dual))
        if coef != lifted:
            raise NotDecomposable(
                f"coefficient {i}: cohomology gives {coef}, Kuenneth lift gives {lifted}",
                lhs,
            )
        coeffs.append(coef)
        fitted = fitted + term.scale(coef)
    residue = lhs - fitted
    if not residue.is_zero():
        raise NotDecomposable("Delta . p^*h is not decomposable", residue)
    return coeffs


def hyp_residual(g: int, j: int = 1) -> CohClass:
    """(Delta - (1/4) sum h^i x h^(2g-1-i)) . p_j^* h, which should vanish."""
    Y = make_space("Y", g)
    tau = build_ck(g)[Y.top_power].carrier
    return mul(tau, h_power(Y, 1, j, 2))


def hyp_check(g: int) -> Report:
    report = Report()
    for j in (1, 2):
        start = time.perf_counter()
        params = {"g": g, "j": j}
        try:
            coeffs = hyp_coefficients(g, j)
        except NotDecomposable as exc:
            report.add(CheckResult("hyp", params, FAIL, {"error": str(exc)}, exc.residue))
            continue
        residual = hyp_residual(g, j)
        ok = all(c == Fraction(1, 4) for c in coeffs) and residual.is_zero()
        report.add(
            CheckResult(
                "hyp",
                params,
                PASS if ok else FAIL,
                {"coefficients": coeffs},
                None if residual.is_zero() else residual,
                time.perf_counter() - start,
            )
        )
    return report
