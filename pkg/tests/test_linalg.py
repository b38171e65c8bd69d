# tests/test_linalg.py
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from services.exceptions import ShapeError
from services.fields import RATIONALS
from services.linalg import determinant, echelon, kernel, mat_vec, rank
from tests.strategies import GF5, GF7, fields, scalars


def matrix(field, rows):
    return [field.vector(row) for row in rows]


def sympy_matrix(rows):
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in rows])


@st.composite
def square_matrices(draw, field, max_size=4):
    size = draw(st.integers(min_value=1, max_value=max_size))
    return [[draw(scalars(field)) for _ in range(size)] for _ in range(size)]


@st.composite
def matrices(draw, field, max_rows=4, max_cols=5):
    height = draw(st.integers(min_value=1, max_value=max_rows))
    width = draw(st.integers(min_value=1, max_value=max_cols))
    return [[draw(scalars(field)) for _ in range(width)] for _ in range(height)]


def test_determinant_small_cases():
    assert determinant(matrix(RATIONALS, [[1, 2], [3, 4]])) == -2
    assert determinant(matrix(RATIONALS, [[0, 1], [1, 0]])) == -1
    assert determinant(matrix(RATIONALS, [[2, 0, 0], [0, 3, 0], [0, 0, Fraction(1, 6)]])) == 1
    assert determinant(matrix(GF5, [[1, 2], [2, 4]])) == 0


def test_determinant_needs_square_matrix():
    with pytest.raises(ShapeError):
        determinant(matrix(RATIONALS, [[1, 2, 3], [4, 5, 6]]))


@given(square_matrices(RATIONALS))
def test_determinant_matches_sympy(rows):
    assert determinant(rows) == Fraction(str(sympy_matrix(rows).det()))


@given(square_matrices(GF7))
def test_determinant_mod_p_matches_integer_determinant(rows):
    integer = sympy.Matrix([[x.value for x in row] for row in rows]).det()
    assert determinant(rows) == GF7(int(integer) % 7)


@given(matrices(RATIONALS))
def test_rank_matches_sympy(rows):
    assert rank(rows) == sympy_matrix(rows).rank()


@given(st.data())
def test_kernel_vectors_are_annihilated(data):
    field = data.draw(fields)
    rows = data.draw(matrices(field))
    basis = kernel(rows)
    assert len(basis) == len(rows[0]) - rank(rows)
    for v in basis:
        assert any(v)
        assert not any(mat_vec(rows, v))
    if basis:
        assert rank(basis) == len(basis)


def test_kernel_over_rationals_is_primitive():
    (v,) = kernel(matrix(RATIONALS, [[1, 2], [2, 4]]))
    assert [x.value for x in v] == [-2, 1]


def test_echelon_reports_pivot_columns():
    _, pivots = echelon(matrix(RATIONALS, [[0, 1, 2], [0, 2, 4], [0, 0, 1]]))
    assert pivots == [1, 2]
