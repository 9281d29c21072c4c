from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from ckverify.linalg import EchelonBasis, dense_rank, rank, solve

entries = st.fractions(min_value=-4, max_value=4, max_denominator=5)


@st.composite
def matrices(draw, max_rows=7, max_cols=7):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    # sparse-ish: many zeros, and occasionally duplicated rows
    cell = st.one_of(st.just(Fraction(0)), st.just(Fraction(0)), entries)
    rows = [[draw(cell) for _ in range(c)] for _ in range(r)]
    if r > 1 and draw(st.booleans()):
        k = draw(st.fractions(min_value=-3, max_value=3, max_denominator=4))
        rows[-1] = [k * x + y for x, y in zip(rows[0], rows[1 % r])]
    return rows


@settings(max_examples=200, deadline=None)
@given(matrices())
def test_rank_matches_sympy(m):
    assert dense_rank(m) == sympy.Matrix(m).rank()


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_rank_is_transpose_invariant(m):
    t = [list(col) for col in zip(*m)]
    assert dense_rank(m) == dense_rank(t)


def test_rank_of_sparse_rows_with_hashable_keys():
    rows = [{"a": 1, "b": 2}, {"b": 1, "c": -1}, {"a": 1, "c": 2}]
    assert rank(rows) == 2
    assert rank(rows + [{"d": Fraction(1, 3)}]) == 3


def test_echelon_reduce_returns_remainder():
    basis = EchelonBasis()
    assert basis.add({0: 2, 1: 4})
    assert not basis.add({0: 1, 1: 2})
    assert basis.reduce({0: 3, 1: 6}) == {}
    assert basis.reduce({1: 5}) != {}
    assert basis.rank == 1


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 5), st.data())
def test_solve_matches_sympy(n, data):
    A = [[data.draw(entries) for _ in range(n)] for _ in range(n)]
    if sympy.Matrix(A).det() == 0:
        return
    x = [data.draw(entries) for _ in range(n)]
    b = [sum(a * v for a, v in zip(row, x)) for row in A]
    eqs = [({j: a for j, a in enumerate(row)}, rhs) for row, rhs in zip(A, b)]
    sol = solve(eqs, list(range(n)))
    assert [sol[j] for j in range(n)] == x
    ref = sympy.Matrix(A).LUsolve(sympy.Matrix(b))
    assert [sympy.Rational(sol[j].numerator, sol[j].denominator) for j in range(n)] == list(ref)


def test_solve_rejects_bad_systems():
    with pytest.raises(ValueError, match="inconsistent"):
        solve([({"x": 1}, 1), ({"x": 2}, 3)], ["x"])
    with pytest.raises(ValueError, match="underdetermined"):
        solve([({"x": 1, "y": 1}, 1)], ["x", "y"])


def test_solve_overdetermined_consistent():
    sol = solve([({"x": 1}, 2), ({"x": 3}, 6), ({"x": 1, "y": 1}, Fraction(5, 2))], ["x", "y"])
    assert sol == {"x": 2, "y": Fraction(1, 2)}
