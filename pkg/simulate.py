"""
Bounded execution of a homogeneous loop, used to cross-check verdicts.
"""
import logging
import random
from dataclasses import dataclass
from fractions import Fraction

from errors import DimensionMismatch, FieldMismatch, InvalidConfig
from exact_arith import POSITIVE, NumberFieldElement, refine_sign, to_rational
from linalg import dot, lift_matrix, lift_vector, mat_vec

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TerminatedAt:
    step: int


@dataclass(frozen=True)
class SurvivedBound:
    bound: int


RunOutcome = TerminatedAt | SurvivedBound


def run(program, x, bound, embedding=None):
    """
    Evaluate the guard on x, A x, ..., A^bound x. The first k with
    f.(A^k x) <= 0 gives TerminatedAt(k). Number-field inputs need the
    embedding that fixes the sign of each guard value.
    """
    if bound < 0:
        raise InvalidConfig("simulation bound must be non-negative")
    if len(x) != program.dimension:
        raise DimensionMismatch(f"input has {len(x)} coordinates for {program.dimension} variables")

    field = next((v.field for v in x if isinstance(v, NumberFieldElement)), None)
    if field is None:
        A = [list(row) for row in program.update]
        f = list(program.guard)
        state = [to_rational(v) for v in x]
    else:
        if embedding is None or embedding.minpoly != field.modulus:
            raise FieldMismatch(f"number-field input over {field} needs a matching real embedding")
        A = lift_matrix(field, program.update)
        f = lift_vector(field, program.guard)
        state = lift_vector(field, x)

    root = embedding
    for step in range(bound + 1):
        value = dot(f, state)
        if field is None:
            positive = value > Fraction(0)
        else:
            sign, root = refine_sign(value, root)
            positive = sign == POSITIVE
        if not positive:
            return TerminatedAt(step)
        if step < bound:
            state = mat_vec(A, state)
    return SurvivedBound(bound)


def run_adaptive(program, x, start, limit, embedding=None):
    """Double the bound from start until the run terminates or passes limit."""
    if start < 1 or limit < start:
        raise InvalidConfig(f"adaptive bounds need 1 <= start <= limit, got {start} and {limit}")
    bound = start
    while True:
        outcome = run(program, x, bound, embedding)
        if isinstance(outcome, TerminatedAt) or bound >= limit:
            return outcome
        logger.debug("[SIMULATE] survived %d steps, doubling", bound)
        bound = min(bound * 2, limit)


def sample_rational_inputs(program, count, magnitude, seed=0):
    """Reproducible rational vectors with numerators in [-m, m] and denominators in [1, m]."""
    if count < 1 or magnitude < 1:
        raise InvalidConfig("sample count and magnitude must be positive")
    rng = random.Random(seed)
    return [
        [Fraction(rng.randint(-magnitude, magnitude), rng.randint(1, magnitude)) for _ in range(program.dimension)]
        for _ in range(count)
    ]
