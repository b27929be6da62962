"""
Source text to verdicts and documents, shared by the CLI and the HTTP service.
"""
import logging

import settings
from certificates import certificate_to_dict, outcome_to_dict, witness_to_dict
from decision import decide
from errors import DimensionMismatch, ProgramTerminates
from exact_arith import to_rational
from frontend import load_program
from simulate import run
from witness import check_witness, synthesize_witness

logger = logging.getLogger(__name__)


def parse_vector(values):
    """A list of rationals from JSON values or a comma-separated string like '1, -2/3'."""
    if isinstance(values, str):
        values = [v for v in (part.strip() for part in values.split(',')) if v]
    try:
        return [to_rational(v) for v in values]
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise DimensionMismatch(f"invalid input vector: {e}") from None


def check_source(text, fmt=None):
    """Decide a loop given as source text. Returns (program, certificate, document)."""
    program = load_program(text, fmt)
    cert = decide(program)
    logger.info(f"[CHECK] n={program.dimension}: {cert.verdict.value}")
    return program, cert, certificate_to_dict(program, cert)


def witness_source(text, fmt=None, bound=None):
    """Witness document for a nonterminating loop, with bounded simulation evidence."""
    bound = settings.SIMULATION_BOUND if bound is None else bound
    program = load_program(text, fmt)
    cert = decide(program)
    if cert.terminating:
        raise ProgramTerminates("program terminates on every input; there is no witness")
    witness = synthesize_witness(program, cert.failing_eigenvalue)
    if not check_witness(program, witness):
        logger.error(f"[WITNESS] synthesized witness failed its own check for {witness.eigenvalue}")
    outcome = run(program, list(witness.vector), bound, witness.eigenvalue)
    return witness_to_dict(program, witness, outcome)


def simulate_source(text, x, bound, fmt=None):
    program = load_program(text, fmt)
    outcome = run(program, parse_vector(x), bound)
    return outcome, outcome_to_dict(outcome)
