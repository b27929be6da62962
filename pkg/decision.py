"""
Termination of homogeneous linear loops  while (f.x > 0) { x := A x }.

The loop terminates on every real input exactly when, for each positive
eigenvalue lambda of A, f lies in the row space of (A - lambda I)^n.
Membership is decided by Gauss-Jordan elimination over Q(lambda).
"""
import logging
from dataclasses import dataclass, field
from enum import Enum

import settings
from eigen import EigenRecord, char_poly, positive_real_eigenvalues
from errors import DegenerateGuard, DimensionMismatch, FieldMismatch
from exact_arith import NumberFieldElement, to_rational
from linalg import is_zero_vector, lift_vector, mat_power, one_of, shifted, zero_of

logger = logging.getLogger(__name__)


class Verdict(str, Enum):
    TERMINATING = 'TERMINATING'
    NONTERMINATING = 'NONTERMINATING'


@dataclass(frozen=True)
class HomogeneousProgram:
    update: tuple
    guard: tuple
    variables: tuple = ()
    source: str = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        update = tuple(tuple(to_rational(x) for x in row) for row in self.update)
        guard = tuple(to_rational(x) for x in self.guard)
        n = len(update)
        if n < 1 or any(len(row) != n for row in update):
            raise DimensionMismatch("update matrix must be square with dimension >= 1")
        if len(guard) != n:
            raise DimensionMismatch(f"guard has {len(guard)} coefficients for {n} variables")
        variables = tuple(self.variables) or tuple(f"x{i + 1}" for i in range(n))
        if len(variables) != n:
            raise DimensionMismatch(f"{len(variables)} variable names for {n} variables")
        object.__setattr__(self, 'update', update)
        object.__setattr__(self, 'guard', guard)
        object.__setattr__(self, 'variables', variables)

    @property
    def dimension(self):
        return len(self.update)


@dataclass(frozen=True)
class MembershipResult:
    eigenvalue: EigenRecord
    member: bool
    pivot_entry: NumberFieldElement


@dataclass(frozen=True)
class Certificate:
    verdict: Verdict
    characteristic_polynomial: object
    positive_eigenvalues: tuple = ()
    memberships: tuple = ()
    failing_eigenvalue: EigenRecord = None

    @property
    def terminating(self):
        return self.verdict is Verdict.TERMINATING


def rref(M):
    """
    Reduced row echelon form by Gauss-Jordan elimination. The pivot is the
    first row with a nonzero entry in the current column; zero rows end up last.
    """
    R = [list(row) for row in M]
    if not R:
        return R
    rows, cols = len(R), len(R[0])
    pivot_row = 0
    for col in range(cols):
        if pivot_row == rows:
            break
        found = next((r for r in range(pivot_row, rows) if R[r][col] != 0), None)
        if found is None:
            continue
        R[pivot_row], R[found] = R[found], R[pivot_row]
        pivot = R[pivot_row][col]
        inverse = one_of(pivot) / pivot
        R[pivot_row] = [x * inverse for x in R[pivot_row]]
        for r in range(rows):
            factor = R[r][col]
            if r == pivot_row or factor == 0:
                continue
            R[r] = [x - factor * y for x, y in zip(R[r], R[pivot_row])]
        pivot_row += 1
    return R


def row_space_contains(M, v):
    """
    Whether v lies in the row space of M. The nonzero rows of rref(M) are
    stacked over v and reduced again; v is a member exactly when the last
    row of that reduction vanishes. Returns (member, pivot_entry) where
    pivot_entry is the leading entry of that last row (zero for members).
    """
    if any(len(row) != len(v) for row in M):
        raise DimensionMismatch(f"vector of length {len(v)} against rows of length {len(M[0]) if M else 0}")
    basis = [row for row in rref(M) if not is_zero_vector(row)]
    reduced = rref(basis + [list(v)])
    last = reduced[-1]
    zero = zero_of(next((x for x in last if isinstance(x, NumberFieldElement)), last[0]))
    pivot = next((x for x in last if x != 0), zero)
    return pivot == 0, pivot


def generalized_eigenmatrix(A, value, exponent=None, chi=None):
    """(A - value*I)^exponent over Q(value); the exponent defaults to n."""
    if chi is None:
        chi = char_poly(A)
    if not chi.rem(value.minpoly).is_zero:
        raise FieldMismatch(f"{value.describe()} is not an eigenvalue: {value.minpoly.as_expr()} does not divide {chi.as_expr()}")
    field = value.field
    n = len(A)
    return mat_power(shifted(A, field, field.generator), n if exponent is None else exponent)


def decide(program, exponent_mode=None):
    """Algorithm: positive eigenvalues first, then one row-space test per eigenvalue."""
    exponent_mode = exponent_mode or settings.DECISION_EXPONENT
    if all(x == 0 for x in program.guard):
        raise DegenerateGuard("guard f.x > 0 with f = 0 is never satisfied")
    A = [list(row) for row in program.update]
    n = program.dimension
    chi = char_poly(A)
    records = positive_real_eigenvalues(A, chi)
    if not records:
        logger.debug("[DECIDE] no positive eigenvalue, terminating (n=%d)", n)
        return Certificate(Verdict.TERMINATING, chi)

    # conjugate roots share their field, so one test per irreducible factor
    tested = {}
    memberships = []
    for record in records:
        value = record.value
        key = value.minpoly
        if key not in tested:
            exponent = record.multiplicity if exponent_mode == 'multiplicity' else n
            E = generalized_eigenmatrix(A, value, exponent, chi)
            tested[key] = row_space_contains(E, lift_vector(value.field, program.guard))
        member, pivot = tested[key]
        memberships.append(MembershipResult(record, member, pivot))
        if not member:
            logger.debug("[DECIDE] guard not in row space for %s, nonterminating", value)
            return Certificate(Verdict.NONTERMINATING, chi, tuple(records), tuple(memberships), record)
    logger.debug("[DECIDE] guard in every row space (%d positive eigenvalue(s)), terminating", len(records))
    return Certificate(Verdict.TERMINATING, chi, tuple(records), tuple(memberships))
