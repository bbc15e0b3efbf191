from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from heckext.linalg import (QMatrix, SingularMatrixError, format_scalar, parse_scalar,
                            to_scalar)

from helpers import oracle_rank, sym

fracs = st.fractions(min_value=-20, max_value=20, max_denominator=6)


@st.composite
def matrices(draw, max_m=5, max_n=5, square=False):
    m = draw(st.integers(1, max_m))
    n = m if square else draw(st.integers(1, max_n))
    return [[draw(fracs) for _ in range(n)] for _ in range(m)]


def test_entries_kept_in_lowest_terms():
    A = QMatrix([[Fraction(2, 4), 1], [Fraction(3, 6), 0]])
    assert A.denominator == 2
    assert A[0, 0] == Fraction(1, 2)
    assert A.numerators == ((1, 2), (1, 0))


def test_floats_rejected():
    with pytest.raises(TypeError):
        QMatrix([[0.5]])
    with pytest.raises(ValueError):
        parse_scalar("0.5")


def test_scalar_text_round_trip():
    for x in [Fraction(0), Fraction(-7, 3), Fraction(5)]:
        assert parse_scalar(format_scalar(x)) == x
    assert format_scalar(Fraction(4, 2)) == "2"
    assert to_scalar("3/9") == Fraction(1, 3)


def test_ragged_rows_rejected():
    with pytest.raises(ValueError):
        QMatrix([[1, 2], [3]])


def test_inverse_of_singular_raises():
    with pytest.raises(SingularMatrixError):
        QMatrix([[1, 2], [2, 4]]).inverse()


def test_text_round_trip():
    A = QMatrix([[Fraction(1, 3), -2], [0, Fraction(7, 5)]])
    assert QMatrix.from_text(A.to_text()) == A


@given(matrices(), st.data())
def test_matmul_matches_fraction_arithmetic(a, data):
    n = len(a[0])
    b = data.draw(st.lists(st.lists(fracs, min_size=3, max_size=3), min_size=n, max_size=n))
    P = QMatrix(a) @ QMatrix(b)
    expect = [[sum((a[i][k] * b[k][j] for k in range(n)), Fraction(0)) for j in range(3)]
              for i in range(len(a))]
    assert P.tolist() == expect


@given(matrices())
def test_rank_matches_sympy(a):
    assert QMatrix(a).rank() == oracle_rank(a)


@given(matrices())
def test_nullspace_is_kernel_of_full_dimension(a):
    A = QMatrix(a)
    K = A.nullspace()
    assert K.ncols == A.ncols - A.rank()
    assert (A @ K).is_zero()


@given(matrices(square=True))
def test_det_and_inverse_match_sympy(a):
    A = QMatrix(a)
    S = sym(A)
    assert A.det() == Fraction(str(S.det()))
    if A.det() != 0:
        assert A @ A.inverse() == QMatrix.identity(A.nrows)


@given(matrices())
def test_rref_is_idempotent_and_preserves_row_space(a):
    A = QMatrix(a)
    R, piv = A.rref()
    assert R.rref()[0] == R
    assert QMatrix.vstack([A, R]).rank() == A.rank() == len(piv)


@given(matrices(), matrices())
def test_kron_shape_and_trace(a, b):
    A, B = QMatrix(a), QMatrix(b)
    K = A.kron(B)
    assert K.shape == (A.nrows * B.nrows, A.ncols * B.ncols)
    if A.nrows == A.ncols and B.nrows == B.ncols:
        assert K.trace() == A.trace() * B.trace()


@given(matrices())
def test_column_basis_spans_columns(a):
    A = QMatrix(a)
    B, cols = A.column_basis()
    assert B.ncols == A.rank() == len(cols)
    assert QMatrix.hstack([B, A], nrows=A.nrows).rank() == B.ncols
