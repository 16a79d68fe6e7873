from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hlysa.linalg import NotASubspace, SubspaceBasis, nullspace, rank, solve
from oracles import bareiss_rank

entries = st.one_of(st.integers(-4, 4), st.fractions(min_value=-2, max_value=2, max_denominator=3))


@st.composite
def matrices(draw, max_rows=7, max_cols=7):
    m = draw(st.integers(1, max_rows))
    n = draw(st.integers(1, max_cols))
    return [[draw(entries) for _ in range(n)] for _ in range(m)], n


def dot(r, x):
    return sum(Fraction(a) * b for a, b in zip(r, x))


@given(matrices())
def test_rank_nullity(mn):
    M, n = mn
    N = nullspace(M, n)
    assert rank(M, n) == bareiss_rank(M)
    assert N.dim == n - bareiss_rank(M)
    for v in N.vectors:
        assert all(dot(r, v) == 0 for r in M)


@given(matrices(), st.data())
def test_solve_consistent_systems(mn, data):
    M, n = mn
    x0 = [data.draw(st.integers(-3, 3)) for _ in range(n)]
    rhs = [dot(r, x0) for r in M]
    x = solve(M, rhs, n)
    assert x is not None
    assert [dot(r, x) for r in M] == rhs


def test_solve_inconsistent_and_free_zero():
    assert solve([[1, 1], [2, 2]], [1, 3], 2) is None
    # the free unknown (column 1) is set to zero
    assert solve([[1, 1]], [4], 2) == (4, 0)


def test_nullspace_is_canonical_under_row_order():
    rows = [[1, 2, 0, 1], [0, 1, 1, 1], [1, 3, 1, 2]]
    assert nullspace(rows, 4) == nullspace(rows[::-1], 4)
    assert nullspace(rows, 4).vectors == nullspace(rows[::-1], 4).vectors


@given(matrices(max_cols=5), matrices(max_cols=5))
def test_subspace_dimension_formula(a, b):
    (A, n), (B, m) = a, b
    k = min(n, m)
    U = SubspaceBasis.span([r[:k] for r in A], k)
    W = SubspaceBasis.span([r[:k] for r in B], k)
    assert U.sum(W).dim + U.intersect(W).dim == U.dim + W.dim
    assert U.intersect(W).is_subspace_of(U) and U.intersect(W).is_subspace_of(W)
    assert U.is_subspace_of(U.sum(W))


def test_quotient_requires_inclusion():
    U = SubspaceBasis.span([(1, 0, 0)], 3)
    F = SubspaceBasis.full(3)
    assert F.quotient_dim(U) == 2
    with pytest.raises(NotASubspace) as err:
        U.quotient_dim(F)
    assert err.value.witness in F.vectors
    assert SubspaceBasis.zero(3).dim == 0
