"""
Random loop generation and the batch experiment harness.

Each set decides ``loops_per_set`` random programs of one dimension and
reports verdict counts and CPU seconds split by verdict. Counts are a
function of (seed, config); timings are informational only.
"""
import logging
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import settings
from decision import HomogeneousProgram, Verdict, decide
from errors import InvalidConfig, TerminationError
from witness import check_witness, synthesize_witness

logger = logging.getLogger(__name__)

MIN_DIMENSION, MAX_DIMENSION = 2, 8


@dataclass(frozen=True)
class BenchConfig:
    dimensions: tuple
    loops_per_set: int
    entry_magnitude: int = 10
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, 'dimensions', tuple(self.dimensions))
        if not self.dimensions:
            raise InvalidConfig("at least one dimension is required")
        for dim in self.dimensions:
            if isinstance(dim, bool) or not isinstance(dim, int) or not MIN_DIMENSION <= dim <= MAX_DIMENSION:
                raise InvalidConfig(f"dimension {dim!r} is outside [{MIN_DIMENSION}, {MAX_DIMENSION}]")
        if self.loops_per_set < 1:
            raise InvalidConfig("loops_per_set must be at least 1")
        if self.entry_magnitude < 1:
            raise InvalidConfig("entry_magnitude must be at least 1")


@dataclass(frozen=True)
class BenchRow:
    set_index: int
    dimension: int
    loops: int
    count_terminating: int
    count_nonterminating: int
    errors: int
    cpu_terminating: float
    cpu_nonterminating: float

    @property
    def cpu_total(self):
        return self.cpu_terminating + self.cpu_nonterminating


@dataclass(frozen=True)
class BenchReport:
    config: BenchConfig
    rows: tuple
    audited: int = 0
    audit_failures: tuple = field(default_factory=tuple)

    @property
    def total_loops(self):
        return sum(row.loops for row in self.rows)


def random_program(dim, magnitude, rng):
    """A and f with integer entries uniform in [-magnitude, magnitude]; f != 0."""
    if dim < 1:
        raise InvalidConfig("dimension must be at least 1")
    A = [[rng.randint(-magnitude, magnitude) for _ in range(dim)] for _ in range(dim)]
    f = [0] * dim
    while all(x == 0 for x in f):
        f = [rng.randint(-magnitude, magnitude) for _ in range(dim)]
    return HomogeneousProgram(A, f)


def _set_rng(seed, set_index, dim):
    # str seeds hash deterministically across runs and processes
    return random.Random(f"bench:{seed}:{set_index}:{dim}")


def generate_set(config, set_index, dim):
    """The programs of one set; sets of equal dimension still differ."""
    rng = _set_rng(config.seed, set_index, dim)
    return [random_program(dim, config.entry_magnitude, rng) for _ in range(config.loops_per_set)]


def _decide_timed(program):
    """Top-level so worker processes can pickle it: (verdict name or None, cpu seconds)."""
    start = time.process_time()
    try:
        verdict = decide(program).verdict.value
    except TerminationError as e:
        logger.warning(f"[BENCH] decision failed: {e}")
        verdict = None
    return verdict, time.process_time() - start


def _audit(program):
    """Re-decide a program and check its evidence; returns a problem string or None."""
    cert = decide(program)
    if cert.terminating:
        if cert.failing_eigenvalue is not None or not all(m.member for m in cert.memberships):
            return "terminating certificate lists a failing eigenvalue"
        return None
    try:
        witness = synthesize_witness(program, cert.failing_eigenvalue)
    except TerminationError as e:
        return f"no witness for nonterminating verdict: {e}"
    if not check_witness(program, witness):
        return "witness does not check"
    return None


def run_suite(config, workers=None, audit_rate=None):
    """Decide every generated program, set by set, and build the report."""
    workers = workers or settings.BENCH_WORKERS
    audit_rate = settings.BENCH_AUDIT_RATE if audit_rate is None else audit_rate
    if not 0 <= audit_rate <= 1:
        raise InvalidConfig("audit rate must lie in [0, 1]")
    audit_rng = random.Random(config.seed)

    rows = []
    audited = 0
    failures = []
    executor = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for set_index, dim in enumerate(config.dimensions, start=1):
            programs = generate_set(config, set_index, dim)
            if executor is not None:
                results = list(executor.map(_decide_timed, programs))
            else:
                results = [_decide_timed(p) for p in programs]

            counts = {Verdict.TERMINATING.value: 0, Verdict.NONTERMINATING.value: 0, None: 0}
            cpu = {Verdict.TERMINATING.value: 0.0, Verdict.NONTERMINATING.value: 0.0, None: 0.0}
            for verdict, seconds in results:
                counts[verdict] += 1
                cpu[verdict] += seconds

            for index, program in enumerate(programs):
                if audit_rate and audit_rng.random() < audit_rate and results[index][0] is not None:
                    audited += 1
                    problem = _audit(program)
                    if problem:
                        failures.append(f"set {set_index}, loop {index}: {problem}")

            row = BenchRow(
                set_index=set_index,
                dimension=dim,
                loops=config.loops_per_set,
                count_terminating=counts[Verdict.TERMINATING.value],
                count_nonterminating=counts[Verdict.NONTERMINATING.value],
                errors=counts[None],
                cpu_terminating=cpu[Verdict.TERMINATING.value],
                cpu_nonterminating=cpu[Verdict.NONTERMINATING.value],
            )
            logger.info(f"[BENCH] set {set_index} dim {dim}: {row.count_terminating} T, {row.count_nonterminating} NT, {row.errors} errors")
            rows.append(row)
    finally:
        if executor is not None:
            executor.shutdown()

    if failures:
        logger.error(f"[BENCH] {len(failures)} audit failure(s): {failures[:3]}")
    return BenchReport(config, tuple(rows), audited, tuple(failures))


COLUMNS = ('Set', '#Loops', 'Dim', '#T', '#NT', 'CPU/s[T]', 'CPU/s[N]', 'CPU/s[total]')


def format_table(report):
    """Aligned plain-text table in the column order of the experiment table."""
    body = [
        (str(r.set_index), str(r.loops), str(r.dimension), str(r.count_terminating), str(r.count_nonterminating),
         f"{r.cpu_terminating:.3f}", f"{r.cpu_nonterminating:.3f}", f"{r.cpu_total:.3f}")
        for r in report.rows
    ]
    widths = [max(len(h), *(len(row[i]) for row in body)) if body else len(h) for i, h in enumerate(COLUMNS)]
    lines = ['  '.join(h.rjust(w) for h, w in zip(COLUMNS, widths))]
    lines.append('  '.join('-' * w for w in widths))
    lines.extend('  '.join(cell.rjust(w) for cell, w in zip(row, widths)) for row in body)
    errors = sum(r.errors for r in report.rows)
    if errors:
        lines.append(f"({errors} loop(s) could not be decided)")
    if report.audited:
        lines.append(f"audited {report.audited} certificate(s), {len(report.audit_failures)} failure(s)")
    return '\n'.join(lines)


def report_to_dict(report):
    return {
        'config': {
            'dimensions': list(report.config.dimensions),
            'loops_per_set': report.config.loops_per_set,
            'entry_magnitude': report.config.entry_magnitude,
            'seed': report.config.seed,
        },
        'rows': [
            {
                'set': r.set_index,
                'loops': r.loops,
                'dimension': r.dimension,
                'terminating': r.count_terminating,
                'nonterminating': r.count_nonterminating,
                'errors': r.errors,
                'cpu_terminating': round(r.cpu_terminating, 6),
                'cpu_nonterminating': round(r.cpu_nonterminating, 6),
                'cpu_total': round(r.cpu_total, 6),
            }
            for r in report.rows
        ],
        'audited': report.audited,
        'audit_failures': list(report.audit_failures),
    }
