import unittest
import sys
import os
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))
import random
from fractions import Fraction

from bench import random_program
from decision import HomogeneousProgram, decide, generalized_eigenmatrix, row_space_contains
from eigen import positive_real_eigenvalues
from errors import NotAFailure
from exact_arith import POSITIVE, sign_of
from linalg import lift_vector, mat_power
from simulate import SurvivedBound, run, run_adaptive, sample_rational_inputs
from witness import check_witness, kernel_orthogonal, nullspace_basis, synthesize_witness

SHIFTED_A = [[2, -1, 0, 0], [-1, 2, -1, 0], [0, -1, 2, 1], [0, 0, 0, 2]]
A1 = [[1, 1, 0], [0, 1, 0], [0, 0, -1]]
SILVER = HomogeneousProgram([[0, 1], [1, -2]], [1, 0])


class NullspaceTestCase(unittest.TestCase):
    def test_identity_has_trivial_kernel(self):
        I = [[Fraction(int(i == j)) for j in range(3)] for i in range(3)]
        self.assertEqual(nullspace_basis(I), [])

    def test_generalized_eigenspace_of_a1(self):
        shifted = [[Fraction(x) for x in row] for row in A1]
        for i in range(3):
            shifted[i][i] -= 1
        basis = nullspace_basis(mat_power(shifted, 3))
        self.assertEqual(basis, [[1, 0, 0], [0, 1, 0]])

    def test_kernel_vectors_are_annihilated(self):
        M = [[Fraction(1), 2, 3], [Fraction(2), 4, 6]]
        for w in nullspace_basis(M):
            self.assertEqual([sum(a * b for a, b in zip(row, w)) for row in M], [0, 0])


class WitnessTestCase(unittest.TestCase):
    def test_silver_witness_is_proportional_to_the_eigenvector(self):
        cert = decide(SILVER)
        witness = synthesize_witness(SILVER, cert.failing_eigenvalue)
        lam = witness.eigenvalue.field.generator
        x0, x1 = witness.vector
        # (1, -1 + sqrt(2)) = (1, lambda)
        self.assertEqual(x0 * lam, x1)
        self.assertEqual(witness.rank_r, 1)
        self.assertEqual(sign_of(witness.guard_value, witness.eigenvalue), POSITIVE)
        self.assertTrue(check_witness(SILVER, witness))

    def test_silver_witness_survives_fifty_steps(self):
        cert = decide(SILVER)
        witness = synthesize_witness(SILVER, cert.failing_eigenvalue)
        outcome = run(SILVER, list(witness.vector), 50, witness.eigenvalue)
        self.assertEqual(outcome, SurvivedBound(50))

    def test_shifted_loop_witness(self):
        program = HomogeneousProgram(SHIFTED_A, [-1, -1, 1, 1])
        cert = decide(program)
        witness = synthesize_witness(program, cert.failing_eigenvalue)
        sqrt2 = witness.eigenvalue.field.generator - 2
        w = witness.vector
        self.assertEqual(witness.rank_r, 1)
        self.assertEqual(w[1], -sqrt2 * w[0])
        self.assertEqual(w[2], w[0])
        self.assertEqual(w[3], 0)
        self.assertTrue(check_witness(program, witness))
        self.assertEqual(run(program, list(w), 50, witness.eigenvalue), SurvivedBound(50))

    def test_jordan_block_needs_the_second_layer(self):
        program = HomogeneousProgram(A1, [0, 1, 0])
        cert = decide(program)
        witness = synthesize_witness(program, cert.failing_eigenvalue)
        self.assertEqual(witness.rank_r, 2)
        self.assertEqual(list(witness.vector), [0, 1, 0])
        self.assertEqual(witness.scale, 1)
        self.assertTrue(check_witness(program, witness))

    def test_member_guard_has_no_witness(self):
        program = HomogeneousProgram(A1, [0, 0, 1])
        record = positive_real_eigenvalues(A1)[0]
        with self.assertRaises(NotAFailure):
            synthesize_witness(program, record)

    def test_scaled_vector_has_integer_coefficients(self):
        program = HomogeneousProgram([[Fraction(1, 2), Fraction(1, 3)], [Fraction(1, 5), 1]], [1, 1])
        cert = decide(program)
        if cert.terminating:
            self.skipTest("program terminates")
        witness = synthesize_witness(program, cert.failing_eigenvalue)
        for x in witness.scaled_vector:
            self.assertTrue(all(c.denominator == 1 for c in x.coefficients()))
        for s, v in zip(witness.scaled_vector, witness.vector):
            self.assertEqual(s, v * witness.scale)


class DualityTestCase(unittest.TestCase):
    def test_row_space_and_kernel_orthogonality_agree(self):
        rng = random.Random(3)
        for n in (2, 3, 4):
            for _ in range(200):
                program = random_program(n, 5, rng)
                A = [list(row) for row in program.update]
                for record in positive_real_eigenvalues(A):
                    E = generalized_eigenmatrix(A, record.value)
                    f = lift_vector(record.value.field, program.guard)
                    member, _ = row_space_contains(E, f)
                    self.assertEqual(member, kernel_orthogonal(E, f), f"A = {A}, f = {program.guard}")


class ConsistencyTestCase(unittest.TestCase):
    def test_verdicts_agree_with_simulation(self):
        rng = random.Random(17)
        flagged = 0
        sampled = 0
        for index in range(300):
            program = random_program(3, 10, rng)
            cert = decide(program)
            if cert.terminating:
                for x in sample_rational_inputs(program, 2, 10, seed=index):
                    sampled += 1
                    outcome = run_adaptive(program, x, 100, 6400)
                    if isinstance(outcome, SurvivedBound):
                        flagged += 1
            else:
                witness = synthesize_witness(program, cert.failing_eigenvalue)
                outcome = run(program, list(witness.vector), 200, witness.eigenvalue)
                self.assertEqual(outcome, SurvivedBound(200), f"A = {program.update}, f = {program.guard}")
        self.assertLess(flagged, max(1, sampled) * 0.05)


if __name__ == '__main__':
    unittest.main()
