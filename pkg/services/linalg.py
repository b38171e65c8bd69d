# services/linalg.py
"""
Exact elimination over a Field.

Both the determinant and the row echelon form use Bareiss' fraction-free update
    M[i][j] <- (M[k][k] * M[i][j] - M[i][k] * M[k][j]) / previous_pivot
so integer inputs stay integral throughout; over GF(p) the same update is an
ordinary elimination step.
"""
import logging
from fractions import Fraction
from math import gcd, lcm
from typing import List, Sequence, Tuple

from services.exceptions import ShapeError
from services.fields import Field, Scalar

logger = logging.getLogger(__name__)

Vector = Tuple[Scalar, ...]
Rows = Sequence[Sequence[Scalar]]


def _field_of(rows: Rows) -> Field:
    for row in rows:
        for entry in row:
            return entry.field
    raise ShapeError("empty matrix")


def _copy(rows: Rows) -> List[List[Scalar]]:
    width = len(rows[0]) if rows else 0
    if any(len(row) != width for row in rows):
        raise ShapeError("ragged matrix")
    return [list(row) for row in rows]


def determinant(rows: Rows) -> Scalar:
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise ShapeError(f"determinant needs a square matrix, got {n} rows of widths {[len(r) for r in rows]}")
    field = _field_of(rows)
    m = _copy(rows)
    if n == 1:
        return m[0][0]

    sign = field.one
    previous = field.one
    for k in range(n - 1):
        if not m[k][k]:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return field.zero
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (pivot * m[i][j] - m[i][k] * m[k][j]) / previous
        previous = pivot
    return sign * m[n - 1][n - 1]


def echelon(rows: Rows) -> Tuple[List[List[Scalar]], List[int]]:
    """Fraction-free row echelon form; returns the reduced rows and pivot columns."""
    m = _copy(rows)
    if not m:
        return m, []
    field = _field_of(m)
    height, width = len(m), len(m[0])
    previous = field.one
    pivots: List[int] = []
    r = 0
    for c in range(width):
        if r == height:
            break
        for i in range(r, height):
            if m[i][c]:
                m[r], m[i] = m[i], m[r]
                break
        else:
            continue
        pivot = m[r][c]
        for i in range(r + 1, height):
            factor = m[i][c]
            for j in range(c + 1, width):
                m[i][j] = (pivot * m[i][j] - factor * m[r][j]) / previous
            m[i][c] = field.zero
        previous = pivot
        pivots.append(c)
        r += 1
    return m, pivots


def rank(rows: Rows) -> int:
    if not rows:
        return 0
    return len(echelon(rows)[1])


def _primitive(vector: List[Scalar]) -> Vector:
    # over the rationals, clear denominators and common factors for readable output
    field = vector[0].field
    if field.is_finite:
        return tuple(vector)
    scale = lcm(*(x.value.denominator for x in vector))
    integers = [x.value.numerator * (scale // x.value.denominator) for x in vector]
    divisor = gcd(*integers)
    return tuple(field.element(Fraction(value, divisor)) for value in integers)


def kernel(rows: Rows, width: int = 0) -> List[Vector]:
    """Basis of {x : rows . x = 0}, one vector per free column."""
    if not rows:
        raise ShapeError("kernel of an empty matrix needs an explicit field")
    reduced, pivots = echelon(rows)
    field = _field_of(rows)
    width = width or len(rows[0])
    free = [c for c in range(width) if c not in pivots]
    basis: List[Vector] = []
    for f in free:
        x = [field.zero] * width
        x[f] = field.one
        for r in range(len(pivots) - 1, -1, -1):
            c = pivots[r]
            total = field.zero
            for j in range(c + 1, width):
                if x[j]:
                    total = total + reduced[r][j] * x[j]
            x[c] = -total / reduced[r][c]
        basis.append(_primitive(x))
    return basis


def mat_vec(rows: Rows, vector: Sequence[Scalar]) -> Vector:
    if any(len(row) != len(vector) for row in rows):
        raise ShapeError(f"matrix width does not match vector length {len(vector)}")
    result = []
    for row in rows:
        total = row[0] * vector[0]
        for a, b in zip(row[1:], vector[1:]):
            if a and b:
                total = total + a * b
        result.append(total)
    return tuple(result)
