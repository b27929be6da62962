import unittest
import sys
import os
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))
import random
from fractions import Fraction

from sympy import Poly, QQ

from eigen import char_poly, positive_real_eigenvalues
from errors import DimensionMismatch
from exact_arith import T, poly_coeffs, poly_from_coeffs

SHIFTED_A = [[2, -1, 0, 0], [-1, 2, -1, 0], [0, -1, 2, 1], [0, 0, 0, 2]]
ROTATION = [[3, -2], [4, -1]]
A1 = [[1, 1, 0], [0, 1, 0], [0, 0, -1]]


def cofactor_char_poly(A):
    """det(tI - A) by Laplace expansion along the first row."""
    n = len(A)
    M = [[Poly((T if i == j else 0) - A[i][j], T, domain=QQ) for j in range(n)] for i in range(n)]

    def det(rows):
        if len(rows) == 1:
            return rows[0][0]
        total = Poly(0, T, domain=QQ)
        for j, entry in enumerate(rows[0]):
            if entry.is_zero:
                continue
            minor = [row[:j] + row[j + 1:] for row in rows[1:]]
            term = entry * det(minor)
            total = total + term if j % 2 == 0 else total - term
        return total

    return det(M)


class CharPolyTestCase(unittest.TestCase):
    def test_shifted_loop(self):
        chi = char_poly(SHIFTED_A)
        self.assertEqual(poly_coeffs(chi), [8, -24, 22, -8, 1])

    def test_rotation(self):
        self.assertEqual(poly_coeffs(char_poly(ROTATION)), [5, -2, 1])

    def test_one_by_one(self):
        self.assertEqual(poly_coeffs(char_poly([[Fraction(-3, 4)]])), [Fraction(3, 4), 1])

    def test_non_square_is_rejected(self):
        with self.assertRaises(DimensionMismatch):
            char_poly([[1, 2]])
        with self.assertRaises(DimensionMismatch):
            char_poly([])

    def test_matches_cofactor_expansion(self):
        rng = random.Random(2024)
        for n in (2, 3, 4):
            for _ in range(200):
                A = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
                self.assertEqual(char_poly(A), cofactor_char_poly(A), f"A = {A}")


class PositiveEigenvaluesTestCase(unittest.TestCase):
    def test_shifted_loop(self):
        records = positive_real_eigenvalues(SHIFTED_A)
        self.assertEqual(len(records), 3)
        quadratic = poly_from_coeffs([2, -4, 1])
        linear = poly_from_coeffs([-2, 1])

        largest, middle, smallest = records
        self.assertEqual(largest.value.minpoly, quadratic)
        self.assertGreater(largest.value.interval.low, 2)
        self.assertEqual(largest.multiplicity, 1)
        self.assertEqual(middle.value.minpoly, linear)
        self.assertEqual(middle.multiplicity, 2)
        self.assertEqual(smallest.value.minpoly, quadratic)
        self.assertLess(smallest.value.interval.high, 2)

    def test_intervals_are_disjoint(self):
        records = positive_real_eigenvalues(SHIFTED_A)
        for i, a in enumerate(records):
            for b in records[i + 1:]:
                self.assertFalse(a.value.interval.overlaps(b.value.interval))

    def test_rotation_has_no_positive_eigenvalue(self):
        self.assertEqual(positive_real_eigenvalues(ROTATION), [])

    def test_a1_has_the_double_eigenvalue_one(self):
        records = positive_real_eigenvalues(A1)
        self.assertEqual(len(records), 1)
        self.assertEqual(records[0].value.rational_value, 1)
        self.assertEqual(records[0].multiplicity, 2)

    def test_zero_eigenvalue_is_not_positive(self):
        self.assertEqual(positive_real_eigenvalues([[0, 1], [0, 0]]), [])

    def test_count_matches_root_count(self):
        rng = random.Random(11)
        for _ in range(50):
            A = [[rng.randint(-5, 5) for _ in range(3)] for _ in range(3)]
            roots = Poly(char_poly(A).as_expr(), T).real_roots()
            expected = len(set(r for r in roots if r > 0))
            self.assertEqual(len(positive_real_eigenvalues(A)), expected, f"A = {A}")


if __name__ == '__main__':
    unittest.main()
