"""
Nontermination witnesses.

When the guard vector f is not orthogonal to the generalized eigenspace of
a positive eigenvalue lambda, take the smallest r with
Ker((A - lambda I)^r) not orthogonal to f. Any x in that kernel with
<f, x> > 0 keeps the guard positive forever. Coordinates live in Q(lambda)
and are also returned scaled to integer polynomials in lambda.
"""
import logging
from dataclasses import dataclass
from math import lcm

from decision import generalized_eigenmatrix, row_space_contains, rref
from eigen import EigenRecord, char_poly
from errors import NotAFailure
from exact_arith import AlgebraicNumber, NumberFieldElement, POSITIVE, refine_sign
from linalg import dot, is_zero_vector, lift_vector, mat_mul, mat_vec, one_of, shifted, zero_of

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Witness:
    eigenvalue: AlgebraicNumber
    rank_r: int
    vector: tuple
    scaled_vector: tuple
    scale: int
    guard_value: NumberFieldElement


def nullspace_basis(M):
    """Basis of {x : M x = 0}, one vector per free column of rref(M)."""
    if not M:
        return []
    R = rref(M)
    cols = len(R[0])
    pivots = {}
    for i, row in enumerate(R):
        col = next((j for j, x in enumerate(row) if x != 0), None)
        if col is None:
            break
        pivots[col] = i
    sample = R[0][0]
    zero, one = zero_of(sample), one_of(sample)
    basis = []
    for free in range(cols):
        if free in pivots:
            continue
        vector = [zero] * cols
        vector[free] = one
        for col, i in pivots.items():
            vector[col] = -R[i][free]
        basis.append(vector)
    return basis


def kernel_orthogonal(M, f):
    """True when every vector of Ker(M) is orthogonal to f."""
    return all(dot(f, w) == 0 for w in nullspace_basis(M))


def _clear_denominators(vector):
    scale = 1
    for x in vector:
        for c in x.coefficients():
            scale = lcm(scale, c.denominator)
    return scale, tuple(x * scale for x in vector)


def synthesize_witness(program, failing):
    """
    Build a witness for a guard vector that is outside the row space of
    (A - lambda I)^n. Accepts an EigenRecord or an AlgebraicNumber.
    """
    value = failing.value if isinstance(failing, EigenRecord) else failing
    A = [list(row) for row in program.update]
    n = program.dimension
    field = value.field
    f = lift_vector(field, program.guard)

    chi = char_poly(A)
    member, _ = row_space_contains(generalized_eigenmatrix(A, value, n, chi), f)
    if member:
        raise NotAFailure(f"guard lies in the row space for {value.describe()}; no witness exists there")

    B = shifted(A, field, field.generator)
    power = B
    root = value
    for r in range(1, n + 1):
        if r > 1:
            power = mat_mul(power, B)
        for w in nullspace_basis(power):
            g = dot(f, w)
            if g == 0:
                continue
            sign, root = refine_sign(g, root)
            if sign != POSITIVE:
                w = [-x for x in w]
                g = -g
            scale, scaled = _clear_denominators(w)
            logger.debug("[WITNESS] layer r=%d for %s, scale %d", r, value, scale)
            return Witness(value, r, tuple(w), scaled, scale, g)
    raise NotAFailure(f"no kernel layer of (A - lambda I) for {value.describe()} meets the guard")


def check_witness(program, witness):
    """Re-verify a witness: positive guard value and exact kernel layer."""
    value = witness.eigenvalue
    field = value.field
    f = lift_vector(field, program.guard)
    x = list(witness.vector)
    g = dot(f, x)
    sign, _ = refine_sign(g, value)
    if sign != POSITIVE:
        return False
    B = shifted([list(row) for row in program.update], field, field.generator)
    image = x
    for _ in range(witness.rank_r - 1):
        image = mat_vec(B, image)
    if witness.rank_r > 1 and is_zero_vector(image):
        return False
    if witness.rank_r == 1 and is_zero_vector(x):
        return False
    if not is_zero_vector(mat_vec(B, image)):
        return False
    return all(s == v * witness.scale for s, v in zip(witness.scaled_vector, witness.vector))
