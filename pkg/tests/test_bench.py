import unittest
import sys
import os
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))
import random

from bench import BenchConfig, format_table, generate_set, random_program, report_to_dict, run_suite
from decision import Verdict, decide
from errors import InvalidConfig


def _counts(report):
    return [(r.dimension, r.count_terminating, r.count_nonterminating, r.errors) for r in report.rows]


class BenchConfigTestCase(unittest.TestCase):
    def test_dimensions_must_be_in_range(self):
        for dims in ([1], [9], [], [3, 'x']):
            with self.assertRaises(InvalidConfig, msg=str(dims)):
                BenchConfig(dimensions=dims, loops_per_set=10)

    def test_loops_must_be_positive(self):
        with self.assertRaises(InvalidConfig):
            BenchConfig(dimensions=[3], loops_per_set=0)


class RandomProgramTestCase(unittest.TestCase):
    def test_deterministic(self):
        a = random_program(3, 10, random.Random(7))
        b = random_program(3, 10, random.Random(7))
        self.assertEqual(a, b)

    def test_range_and_nonzero_guard(self):
        rng = random.Random(1)
        for _ in range(100):
            p = random_program(3, 10, rng)
            self.assertTrue(all(abs(x) <= 10 for row in p.update for x in row))
            self.assertTrue(all(abs(x) <= 10 for x in p.guard))
            self.assertTrue(any(p.guard))

    def test_magnitude_one_still_gets_a_guard(self):
        rng = random.Random(0)
        for _ in range(50):
            self.assertTrue(any(random_program(2, 1, rng).guard))


class GenerateSetTestCase(unittest.TestCase):
    def test_repeated_dimensions_get_different_programs(self):
        config = BenchConfig(dimensions=[3, 3, 3], loops_per_set=30, seed=7)
        sets = [generate_set(config, i, dim) for i, dim in enumerate(config.dimensions, start=1)]
        self.assertNotEqual(sets[0], sets[1])
        self.assertNotEqual(sets[1], sets[2])
        self.assertNotEqual(sets[0][0], sets[1][0])

    def test_same_set_is_reproducible(self):
        config = BenchConfig(dimensions=[3, 3], loops_per_set=10, seed=7)
        self.assertEqual(generate_set(config, 2, 3), generate_set(config, 2, 3))

    def test_suite_counts_follow_the_sets(self):
        config = BenchConfig(dimensions=[3, 3], loops_per_set=15, seed=7)
        report = run_suite(config, workers=1, audit_rate=0)
        for row in report.rows:
            verdicts = [decide(p).verdict for p in generate_set(config, row.set_index, row.dimension)]
            self.assertEqual(row.count_terminating, verdicts.count(Verdict.TERMINATING))
            self.assertEqual(row.count_nonterminating, verdicts.count(Verdict.NONTERMINATING))


class RunSuiteTestCase(unittest.TestCase):
    def test_counts_add_up(self):
        report = run_suite(BenchConfig(dimensions=[3], loops_per_set=100, seed=7), workers=1, audit_rate=0)
        self.assertEqual(len(report.rows), 1)
        row = report.rows[0]
        self.assertEqual(row.count_terminating + row.count_nonterminating + row.errors, 100)
        self.assertEqual(row.errors, 0)
        self.assertGreaterEqual(row.cpu_terminating, 0)
        self.assertGreaterEqual(row.cpu_nonterminating, 0)
        self.assertAlmostEqual(row.cpu_total, row.cpu_terminating + row.cpu_nonterminating)

    def test_counts_are_deterministic(self):
        config = BenchConfig(dimensions=[2, 3], loops_per_set=25, seed=3)
        self.assertEqual(_counts(run_suite(config, workers=1, audit_rate=0)), _counts(run_suite(config, workers=1, audit_rate=0)))

    def test_process_pool_gives_the_same_counts(self):
        config = BenchConfig(dimensions=[3], loops_per_set=12, seed=5)
        self.assertEqual(_counts(run_suite(config, workers=2, audit_rate=0)), _counts(run_suite(config, workers=1, audit_rate=0)))

    def test_audit_passes(self):
        report = run_suite(BenchConfig(dimensions=[3], loops_per_set=15, seed=2), workers=1, audit_rate=1.0)
        self.assertEqual(report.audited, 15)
        self.assertEqual(report.audit_failures, ())

    def test_invalid_audit_rate(self):
        with self.assertRaises(InvalidConfig):
            run_suite(BenchConfig(dimensions=[3], loops_per_set=1), workers=1, audit_rate=2)


class ReportTestCase(unittest.TestCase):
    def setUp(self):
        self.report = run_suite(BenchConfig(dimensions=[3, 4], loops_per_set=10, seed=1), workers=1, audit_rate=0)

    def test_table_has_the_experiment_columns(self):
        table = format_table(self.report)
        header = table.splitlines()[0].split()
        self.assertEqual(header, ['Set', '#Loops', 'Dim', '#T', '#NT', 'CPU/s[T]', 'CPU/s[N]', 'CPU/s[total]'])
        self.assertEqual(len(table.splitlines()), 4)

    def test_report_dict(self):
        doc = report_to_dict(self.report)
        self.assertEqual(doc['config']['dimensions'], [3, 4])
        self.assertEqual([r['dimension'] for r in doc['rows']], [3, 4])
        for r in doc['rows']:
            self.assertEqual(r['terminating'] + r['nonterminating'] + r['errors'], 10)


if __name__ == '__main__':
    unittest.main()
