"""Exact linear algebra: ranks, span membership, Smith normal form."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from abelsym.exactla import (BoundExceeded, SparseIntMatrix, SpanChecker,
                             dense_snf_with_transforms, rank_over_Q,
                             row_span_membership, smith_normal_form)


def mat(rows):
    ncols = max((len(r) for r in rows), default=0)
    return SparseIntMatrix(
        len(rows), ncols,
        [{j: v for j, v in enumerate(r) if v} for r in rows])


def test_rank_simple():
    assert rank_over_Q(mat([[1, 2], [2, 4]])) == 1
    assert rank_over_Q(mat([[1, 0], [0, 1]])) == 2
    assert rank_over_Q(mat([[0, 0]])) == 0
    assert rank_over_Q(SparseIntMatrix(0, 3, [])) == 0


def test_rank_methods_agree():
    m = mat([[2, 4, 6], [3, 5, 7], [5, 9, 13]])  # row3 = row1 + row2
    assert rank_over_Q(m, method="auto") == 2
    assert rank_over_Q(m, method="modular") == 2
    assert rank_over_Q(m, method="exact") == 2
    with pytest.raises(ValueError):
        rank_over_Q(m, method="bogus")


def test_span_membership():
    m = mat([[1, 2, 0], [0, 1, 1]])
    assert row_span_membership(m, [1, 3, 1])
    assert row_span_membership(m, [2, 4, 0])
    assert not row_span_membership(m, [0, 0, 1])
    assert row_span_membership(m, [0, 0, 0])


def test_span_membership_fractions():
    m = mat([[2, 0, 0], [0, 3, 0]])
    checker = SpanChecker(m)
    assert checker.contains({0: Fraction(1, 2), 1: Fraction(1, 3)})
    assert checker.contains_all([{0: 1}, {1: Fraction(5, 7)}])
    assert not checker.contains({0: Fraction(1, 2), 2: Fraction(1, 3)})


def test_snf_known_matrices():
    # [[2,4],[6,8]]: gcd of entries 2, |det| 8, so divisors (2, 4)
    res = smith_normal_form(mat([[2, 4], [6, 8]]))
    assert res.divisors == (2, 4)
    assert res.rank == 2
    assert res.torsion == (2, 4)

    res = smith_normal_form(mat([[1, 0, 0], [0, 3, 0]]))
    assert res.divisors == (1, 3)
    assert res.torsion == (3,)

    res = smith_normal_form(mat([[0, 0], [0, 0]]))
    assert res.rank == 0
    assert res.torsion == ()


def test_snf_divisor_chain_property():
    res = smith_normal_form(mat([[6, 10], [15, 4], [2, 8]]))
    nonzero = [d for d in res.divisors if d]
    for a, b in zip(nonzero, nonzero[1:]):
        assert b % a == 0


def test_snf_bound():
    with pytest.raises(BoundExceeded):
        smith_normal_form(mat([[1, 2], [3, 4]]), bound=1)


def test_dense_snf_transforms_reconstruct():
    a = [[2, 4, 4], [-6, 6, 12], [10, 4, 16]]
    d, u, v = dense_snf_with_transforms([row[:] for row in a])
    # u @ a @ v == d must hold exactly
    n = len(a)
    ua = [[sum(u[i][k] * a[k][j] for k in range(n)) for j in range(n)]
          for i in range(n)]
    uav = [[sum(ua[i][k] * v[k][j] for k in range(n)) for j in range(n)]
           for i in range(n)]
    assert uav == d
    diag = [d[i][i] for i in range(n)]
    for x, y in zip(diag, diag[1:]):
        if x:
            assert y % x == 0


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3),
                min_size=1, max_size=5))
def test_rank_unchanged_by_row_shuffle(rows):
    m = mat(rows)
    r = rank_over_Q(m)
    shuffled = mat(list(reversed(rows)))
    assert rank_over_Q(shuffled) == r
    # appending a row already in the span keeps the rank
    assert rank_over_Q(m.with_rows([dict(m.rows[0])])) == r


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3),
                min_size=1, max_size=4))
def test_snf_rank_matches_rational_rank(rows):
    m = mat(rows)
    assert smith_normal_form(m).rank == rank_over_Q(m, method="exact")


def test_matrix_validation():
    with pytest.raises(ValueError):
        SparseIntMatrix(1, 2, [{5: 1}])
    with pytest.raises(ValueError):
        SparseIntMatrix(2, 2, [{0: 1}])
    m = SparseIntMatrix.from_entries(2, 2, {(0, 0): 3, (1, 1): -1})
    assert m.to_dense() == [[3, 0], [0, -1]]
    assert m.transpose().to_dense() == [[3, 0], [0, -1]]
    assert m.nnz() == 2
