"""Rank, kernel, solve: pinned small cases plus randomized invariants."""

from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ttba import exactlin as ex
from ttba.errors import SchemaError


def test_rank_identity():
    assert ex.rank(ex.RatMatrix.identity(3)) == 3


def test_rank_zero_matrix():
    assert ex.rank(ex.RatMatrix.zero(4, 7)) == 0


def test_rank_proportional_rows():
    assert ex.rank(ex.RatMatrix.from_rows([[1, 2], [2, 4]])) == 1


def test_kernel_identity_empty():
    assert ex.kernel_basis(ex.RatMatrix.identity(2)) == []


def test_kernel_single_row():
    assert ex.kernel_basis(ex.RatMatrix.from_rows([[1, 1]])) == [(F(-1), F(1))]


def test_kernel_proportional_rows():
    # solving x + 2y = 0 by hand: y free, x = -2y; at y = 1 the vector (-2, 1)
    assert ex.kernel_basis(ex.RatMatrix.from_rows([[1, 2], [2, 4]])) \
        == [(F(-2), F(1))]


def test_solve_identity():
    assert ex.solve(ex.RatMatrix.identity(2), (F(3), F(5))) == (F(3), F(5))


def test_solve_underdetermined_canonical():
    assert ex.solve(ex.RatMatrix.from_rows([[1, 1]]), (F(0),)) == (F(0), F(0))


def test_solve_inconsistent():
    assert ex.solve(ex.RatMatrix.from_rows([[1], [1]]), (F(1), F(2))) is None


def test_inverse_round_trip():
    m = ex.RatMatrix.from_rows([[1, 1], [0, 1]])
    inv = ex.inverse(m)
    assert m @ inv == ex.RatMatrix.identity(2)
    assert ex.inverse(ex.RatMatrix.from_rows([[1, 2], [2, 4]])) is None


def test_empty_shapes():
    m = ex.RatMatrix.zero(0, 3)
    assert ex.rank(m) == 0
    assert len(ex.kernel_basis(m)) == 3
    n = ex.RatMatrix.zero(3, 0)
    assert ex.kernel_basis(n) == []
    assert ex.solve(n, (F(0), F(0), F(0))) == ()


def test_rational_text_round_trip():
    for text in ("3", "-3", "1/2", "-7/3", "0"):
        assert ex.format_rational(ex.parse_rational(text)) == text
    assert ex.parse_rational("2/4") == F(1, 2)


@pytest.mark.parametrize("bad", ["1/0", "+3", "3/-4", "1.5", "a", "1/", "/2",
                                 "--1", "1/02"])
def test_rational_text_rejects(bad):
    with pytest.raises(SchemaError):
        ex.parse_rational(bad)


sparse_matrices = st.integers(1, 6).flatmap(
    lambda rows: st.integers(1, 6).flatmap(
        lambda cols: st.lists(
            st.tuples(st.integers(0, rows - 1), st.integers(0, cols - 1),
                      st.fractions(max_denominator=6)),
            max_size=18,
        ).map(lambda entries: _build(rows, cols, entries))))


def _build(rows, cols, entries):
    m = ex.RatMatrix(rows, cols)
    for r, c, v in entries:
        if v:
            m._rows[r][c] = m._rows[r].get(c, F(0)) + v
            if not m._rows[r][c]:
                del m._rows[r][c]
    return m


@settings(max_examples=120, deadline=None)
@given(sparse_matrices)
def test_rank_equals_transpose_rank(m):
    assert ex.rank(m) == ex.rank(m.transpose())


@settings(max_examples=120, deadline=None)
@given(sparse_matrices)
def test_kernel_vectors_are_exact(m):
    basis = ex.kernel_basis(m)
    assert len(basis) == m.cols - ex.rank(m)  # rank-nullity
    for v in basis:
        assert all(x == 0 for x in m.mul_vec(v))


@settings(max_examples=80, deadline=None)
@given(sparse_matrices, st.lists(st.fractions(max_denominator=4), min_size=6,
                                 max_size=6))
def test_solve_finds_constructed_solutions(m, coeffs):
    x0 = tuple(coeffs[:m.cols])
    b = m.mul_vec(x0)
    got = ex.solve(m, b)
    assert got is not None
    assert m.mul_vec(got) == b


def test_results_bit_identical_across_runs():
    import random
    rng = random.Random(99)
    rows = [[F(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(7)]
            for _ in range(9)]
    m1 = ex.RatMatrix.from_rows(rows)
    m2 = ex.RatMatrix.from_rows(rows)
    assert ex.kernel_basis(m1) == ex.kernel_basis(m2)
    assert m1.rref() == m2.rref()
