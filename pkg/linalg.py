"""
Dense matrix helpers over Q (Fraction entries) or a number field
(NumberFieldElement entries). Matrices are lists of row lists.
"""
from fractions import Fraction

from errors import DimensionMismatch
from exact_arith import NumberFieldElement, to_rational


def zero_of(x):
    return x.field.zero if isinstance(x, NumberFieldElement) else Fraction(0)


def one_of(x):
    return x.field.one if isinstance(x, NumberFieldElement) else Fraction(1)


def rational_matrix(rows):
    matrix = [[to_rational(x) for x in row] for row in rows]
    if not matrix or any(len(row) != len(matrix) for row in matrix):
        raise DimensionMismatch("expected a non-empty square matrix")
    return matrix


def lift_matrix(field, rows):
    return [[field.element(x) for x in row] for row in rows]


def lift_vector(field, v):
    return [field.element(x) for x in v]


def identity(n, field=None):
    zero, one = (field.zero, field.one) if field else (Fraction(0), Fraction(1))
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def shifted(A, field, value):
    """A - value*I with entries lifted into the field."""
    n = len(A)
    return [[field.element(A[i][j]) - (value if i == j else 0) for j in range(n)] for i in range(n)]


def dot(u, v):
    if len(u) != len(v):
        raise DimensionMismatch(f"vectors of length {len(u)} and {len(v)}")
    total = None
    for a, b in zip(u, v):
        if a == 0 or b == 0:
            continue
        term = a * b
        total = term if total is None else total + term
    if total is None:
        for x in (*u, *v):
            if isinstance(x, NumberFieldElement):
                return x.field.zero
        return Fraction(0)
    return total


def mat_vec(M, v):
    return [dot(row, v) for row in M]


def mat_mul(X, Y):
    if len(X[0]) != len(Y):
        raise DimensionMismatch(f"cannot multiply {len(X)}x{len(X[0])} by {len(Y)}x{len(Y[0])}")
    columns = list(zip(*Y))
    return [[dot(row, col) for col in columns] for row in X]


def mat_power(M, k):
    """M**k by k-1 successive multiplications, k >= 1."""
    if k < 1:
        raise ValueError("exponent must be at least 1")
    result = M
    for _ in range(k - 1):
        result = mat_mul(result, M)
    return result


def is_zero_vector(v):
    return all(x == 0 for x in v)
