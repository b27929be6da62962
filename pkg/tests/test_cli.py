import unittest
import sys
import os
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))
import io
import json
import tempfile
from contextlib import redirect_stderr, redirect_stdout

from cli import main

SHIFTED_DOC = json.dumps({
    'n': 4,
    'A': [[2, -1, 0, 0], [-1, 2, -1, 0], [0, -1, 2, 1], [0, 0, 0, 2]],
    'f': [-1, -1, 1, 1],
})
ROTATION_DOC = '{"n": 2, "A": [[3, -2], [4, -1]], "f": [3, -1]}'
SILVER_DOC = '{"n": 2, "A": [[0, 1], [1, -2]], "f": [1, 0]}'
SHEAR_FLIP = "while(z > 0){ x := x + y; z := -z; }"


def _run(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


class CheckCommandTestCase(unittest.TestCase):
    def test_shifted_loop_is_nonterminating(self):
        code, out, _ = _run('check', SHIFTED_DOC)
        self.assertEqual(code, 1)
        self.assertTrue(out.startswith('NONTERMINATING'))
        self.assertIn('failing eigenvalue: sqrt(2) + 2', out)

    def test_rotation_terminates(self):
        code, out, _ = _run('check', ROTATION_DOC)
        self.assertEqual(code, 0)
        self.assertIn('no positive eigenvalues', out)

    def test_json_certificate(self):
        code, out, _ = _run('check', SHIFTED_DOC, '--json')
        self.assertEqual(code, 1)
        doc = json.loads(out.split('\n', 1)[1])
        self.assertEqual(doc['verdict'], 'NONTERMINATING')
        self.assertIn('format_version', doc)

    def test_dsl_file_and_output(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'loop.txt')
            target = os.path.join(tmp, 'cert.json')
            with open(path, 'w', encoding='utf-8') as fh:
                fh.write("vars x, y, z;\nwhile (y > 0) { x := x + y; z := -z; }\n")
            code, _, _ = _run('check', path, '--output', target)
            self.assertEqual(code, 1)
            with open(target, encoding='utf-8') as fh:
                self.assertEqual(json.load(fh)['verdict'], 'NONTERMINATING')

    def test_malformed_input_exits_with_2(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'bad.txt')
            with open(path, 'w', encoding='utf-8') as fh:
                fh.write("while (x > ) { x := 1; }")
            code, _, err = _run('check', path)
        self.assertEqual(code, 2)
        self.assertIn('error:', err)

    def test_missing_file_exits_with_2(self):
        code, _, _ = _run('check', '/nonexistent/loop.txt')
        self.assertEqual(code, 2)

    def test_non_utf8_file_exits_with_2(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'latin.txt')
            with open(path, 'wb') as fh:
                fh.write(b"vars x; while (x > 0) { x := 2x; } \xff")
            code, _, err = _run('check', path)
        self.assertEqual(code, 2)
        self.assertIn('UTF-8', err)

    def test_non_list_variables_exit_with_2(self):
        code, _, err = _run('check', '{"n": 1, "A": [[2]], "f": [1], "variables": 5}')
        self.assertEqual(code, 2)
        self.assertIn('variables', err)

    def test_float_matrix_exits_with_2(self):
        code, _, err = _run('check', '{"n": 1, "A": [[1.5]], "f": [1]}')
        self.assertEqual(code, 2)
        self.assertIn('error:', err)

    def test_usage_error(self):
        with self.assertRaises(SystemExit) as ctx:
            _run('frobnicate')
        self.assertEqual(ctx.exception.code, 2)


class WitnessCommandTestCase(unittest.TestCase):
    def test_silver_witness(self):
        code, out, _ = _run('witness', SILVER_DOC)
        self.assertEqual(code, 0)
        self.assertIn('kernel layer r = 1', out)
        self.assertIn('guard positive for all k <= 50', out)

    def test_witness_json(self):
        code, out, _ = _run('witness', SHIFTED_DOC, '--json', '--bound', '20')
        self.assertEqual(code, 0)
        doc = json.loads(out)
        self.assertEqual(doc['simulation']['bound'], 20)
        self.assertEqual(doc['eigenvalue']['minpoly'], ['2', '-4', '1'])

    def test_terminating_program_has_no_witness(self):
        code, _, err = _run('witness', ROTATION_DOC)
        self.assertEqual(code, 2)
        self.assertIn('terminates', err)


class SimulateCommandTestCase(unittest.TestCase):
    def test_shear_flip(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'shear_flip.txt')
            with open(path, 'w', encoding='utf-8') as fh:
                fh.write(SHEAR_FLIP)
            code, out, _ = _run('simulate', path, '--x', '0,0,1', '--bound', '10')
        self.assertEqual(code, 0)
        self.assertIn('terminated at k=1', out)

    def test_wrong_dimension_exits_with_2(self):
        code, _, _ = _run('simulate', ROTATION_DOC, '--x', '1,2,3', '--bound', '10')
        self.assertEqual(code, 2)


class BenchCommandTestCase(unittest.TestCase):
    def test_deterministic_counts(self):
        def counts():
            code, out, _ = _run('bench', '--dims', '3', '--loops', '20', '--seed', '4', '--json', '--workers', '1')
            self.assertEqual(code, 0)
            return [(r['terminating'], r['nonterminating']) for r in json.loads(out)['rows']]
        self.assertEqual(counts(), counts())

    def test_table_and_excel(self):
        with tempfile.TemporaryDirectory() as tmp:
            target = os.path.join(tmp, 'bench.xlsx')
            code, out, _ = _run('bench', '--dims', '2,3', '--loops', '5', '--excel', target, '--workers', '1')
            self.assertEqual(code, 0)
            self.assertIn('CPU/s[total]', out)
            self.assertTrue(os.path.getsize(target) > 0)

    def test_invalid_dimension_exits_with_2(self):
        code, _, _ = _run('bench', '--dims', '12', '--loops', '5')
        self.assertEqual(code, 2)


if __name__ == '__main__':
    unittest.main()
