"""
Characteristic polynomial and the strictly positive real eigenvalues of a
rational matrix, with algebraic multiplicities.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction

from exact_arith import (
    AlgebraicNumber,
    irreducible_factors,
    isolate_positive_roots,
    poly_from_coeffs,
    separate,
)
from linalg import mat_mul, rational_matrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EigenRecord:
    value: AlgebraicNumber
    multiplicity: int

    def describe(self):
        return f"{self.value.describe()} (multiplicity {self.multiplicity})"


def char_poly(A):
    """
    det(tI - A) by the Faddeev-LeVerrier trace recursion:
    M_k = A M_(k-1) + c_(n-k+1) I,  c_(n-k) = -tr(A M_k) / k.
    """
    A = rational_matrix(A)
    n = len(A)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    AM = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        M = [list(row) for row in AM]
        for i in range(n):
            M[i][i] += coeffs[n - k + 1]
        AM = mat_mul(A, M)
        coeffs[n - k] = -sum(AM[i][i] for i in range(n)) / k
    return poly_from_coeffs(coeffs)


def positive_real_eigenvalues(A, chi=None):
    """
    One EigenRecord per strictly positive real eigenvalue of A, largest
    first, with pairwise disjoint isolating intervals.
    """
    if chi is None:
        chi = char_poly(A)
    values = []
    for factor, multiplicity in irreducible_factors(chi):
        for interval in isolate_positive_roots(factor):
            values.append((AlgebraicNumber(factor, interval), multiplicity))

    # shrinking keeps already separated pairs apart, one pass is enough
    for i in range(len(values)):
        for j in range(i + 1, len(values)):
            a, b = values[i][0], values[j][0]
            if a.interval.overlaps(b.interval):
                a, b = separate(a, b)
                values[i] = (a, values[i][1])
                values[j] = (b, values[j][1])

    values.sort(key=lambda item: item[0].interval.low, reverse=True)
    records = [EigenRecord(value, multiplicity) for value, multiplicity in values]
    logger.debug("[EIGEN] chi = %s; %d positive eigenvalue(s)", chi.as_expr(), len(records))
    return records
