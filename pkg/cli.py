"""
Command-line surface.

    python cli.py check loop.txt             exit 0 TERMINATING, 1 NONTERMINATING
    python cli.py witness loop.txt --bound 50
    python cli.py simulate loop.txt --x 0,0,1 --bound 10
    python cli.py bench --dims 3,4,5 --loops 100 --seed 7

Exit code 2 means an input or usage error. Logs go to stderr; stdout
carries only verdicts and documents.
"""
import argparse
import json
import logging
import sys
from pathlib import Path

import settings
from bench import BenchConfig, format_table, report_to_dict, run_suite
from errors import InvalidConfig, TerminationError
from pipeline import check_source, simulate_source, witness_source

logger = logging.getLogger(__name__)

EXIT_TERMINATING, EXIT_NONTERMINATING, EXIT_ERROR = 0, 1, 2


def _read_input(arg):
    """A path, '-' for stdin, or an inline matrix document."""
    if arg.lstrip().startswith('{'):
        return arg
    try:
        if arg == '-':
            return sys.stdin.read()
        return Path(arg).read_text(encoding='utf-8')
    except OSError as e:
        raise InvalidConfig(f"cannot read {arg}: {e.strerror or e}") from None
    except UnicodeDecodeError as e:
        raise InvalidConfig(f"{arg} is not UTF-8 text: {e.reason} at byte {e.start}") from None


def _emit(doc, args):
    text = json.dumps(doc, indent=2, ensure_ascii=False)
    if args.output:
        Path(args.output).write_text(text + '\n', encoding='utf-8')
    if args.json:
        print(text)


def _dimensions(text):
    try:
        return [int(part) for part in text.split(',') if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def cmd_check(args):
    program, cert, doc = check_source(_read_input(args.input), args.format)
    print(cert.verdict.value)
    if not args.json:
        if not cert.positive_eigenvalues:
            print("no positive eigenvalues")
        for m in cert.memberships:
            status = 'in row space' if m.member else 'NOT in row space'
            print(f"  {m.eigenvalue.describe()}: guard {status} (pivot {m.pivot_entry})")
        if cert.failing_eigenvalue is not None:
            print(f"failing eigenvalue: {cert.failing_eigenvalue.value.describe()}")
    _emit(doc, args)
    return EXIT_TERMINATING if cert.terminating else EXIT_NONTERMINATING


def cmd_witness(args):
    doc = witness_source(_read_input(args.input), args.format, args.bound)
    if not args.json:
        value = doc['eigenvalue']
        print(f"eigenvalue λ = {value['display']}")
        print(f"  minimal polynomial (lowest degree first): {', '.join(value['minpoly'])}")
        print(f"  isolating interval: ({value['interval'][0]}, {value['interval'][1]})")
        print(f"kernel layer r = {doc['rank_r']}")
        print(f"witness: ({', '.join(x['text'] for x in doc['vector'])})")
        print(f"scaled by {doc['scale']}: ({', '.join(x['text'] for x in doc['scaled_vector'])})")
        print(f"simulation: {doc['simulation']['message']}")
    _emit(doc, args)
    return 0


def cmd_simulate(args):
    bound = settings.SIMULATION_BOUND if args.bound is None else args.bound
    _, doc = simulate_source(_read_input(args.input), args.x, bound, args.format)
    if not args.json:
        print(doc['message'])
    _emit(doc, args)
    return 0


def cmd_bench(args):
    config = BenchConfig(
        dimensions=args.dims,
        loops_per_set=args.loops,
        entry_magnitude=args.magnitude,
        seed=args.seed,
    )
    report = run_suite(config, workers=args.workers)
    doc = report_to_dict(report)
    if not args.json:
        print(format_table(report))
    _emit(doc, args)
    if args.excel:
        from excel_utils import generate_bench_excel
        generate_bench_excel(doc).save(args.excel)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog='loopterm',
        description="Decide termination of linear loops  while (f.x > 0) { x := A x }",
    )
    sub = parser.add_subparsers(dest='command', required=True)

    def add_common(p):
        p.add_argument('input', help="loop file, '-' for stdin, or an inline JSON matrix document")
        p.add_argument('--format', choices=['dsl', 'matrix'], default=None, help="input format (detected when omitted)")
        p.add_argument('--json', action='store_true', help="print the JSON document to stdout")
        p.add_argument('--output', '-o', default=None, help="also write the JSON document to this file")

    p = sub.add_parser('check', help="decide termination and emit a certificate")
    add_common(p)
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser('witness', help="synthesize a nontermination witness")
    add_common(p)
    p.add_argument('--bound', type=int, default=None, help="simulation steps run on the witness")
    p.set_defaults(handler=cmd_witness)

    p = sub.add_parser('simulate', help="run the loop exactly from one input")
    add_common(p)
    p.add_argument('--x', required=True, help="initial state, e.g. '0,0,1' or '1/2,-3'")
    p.add_argument('--bound', type=int, default=None, help="largest step checked")
    p.set_defaults(handler=cmd_simulate)

    p = sub.add_parser('bench', help="decide batches of random loops")
    p.add_argument('--dims', type=_dimensions, default=[3, 4, 5], help="comma-separated dimensions")
    p.add_argument('--loops', type=int, default=100, help="loops per dimension")
    p.add_argument('--magnitude', type=int, default=settings.BENCH_MAGNITUDE, help="entry magnitude bound")
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--workers', type=int, default=None, help="worker processes")
    p.add_argument('--json', action='store_true', help="print the JSON report to stdout")
    p.add_argument('--output', '-o', default=None, help="also write the JSON report to this file")
    p.add_argument('--excel', default=None, help="write an .xlsx report to this file")
    p.set_defaults(handler=cmd_bench)
    return parser


def main(argv=None):
    logging.basicConfig(
        level=getattr(logging, settings.LOG_LEVEL, logging.INFO),
        stream=sys.stderr,
        format='%(asctime)s %(levelname)s %(name)s: %(message)s',
    )
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except TerminationError as e:
        logger.debug(f"[CLI] {type(e).__name__}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == '__main__':
    sys.exit(main())
