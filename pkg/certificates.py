"""
Certificate and witness documents, and an independent certificate checker.

Algebraic numbers are written as a minimal polynomial (coefficient strings,
lowest degree first) plus rational interval endpoints, never as decimals.
Number-field elements carry their coefficient list and a readable form in
the symbol λ.
"""
import logging

from decision import HomogeneousProgram, Verdict, generalized_eigenmatrix, row_space_contains
from eigen import char_poly
from errors import TerminationError
from exact_arith import (
    AlgebraicNumber,
    IsolatingInterval,
    cauchy_bound,
    poly_coeffs,
    poly_from_coeffs,
    squarefree_part,
    sturm_count,
)
from linalg import lift_vector
from simulate import SurvivedBound, TerminatedAt

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1


def _strings(values):
    return [str(v) for v in values]


def program_to_dict(program):
    return {
        'variables': list(program.variables),
        'A': [_strings(row) for row in program.update],
        'f': _strings(program.guard),
    }


def polynomial_to_dict(p):
    return {'coefficients': _strings(poly_coeffs(p)), 'text': str(p.as_expr())}


def algebraic_to_dict(value):
    return {
        'minpoly': _strings(poly_coeffs(value.minpoly)),
        'interval': [str(value.interval.low), str(value.interval.high)],
        'display': value.describe(),
    }


def element_to_dict(element):
    return {'coefficients': _strings(element.coefficients()), 'text': element.to_text()}


def _index_of(records, record):
    return next(i for i, r in enumerate(records) if r == record)


def certificate_to_dict(program, cert):
    records = list(cert.positive_eigenvalues)
    doc = {
        'format_version': FORMAT_VERSION,
        'kind': 'certificate',
        'verdict': cert.verdict.value,
        'program': program_to_dict(program),
        'characteristic_polynomial': polynomial_to_dict(cert.characteristic_polynomial),
        'positive_eigenvalues': [
            dict(algebraic_to_dict(r.value), multiplicity=r.multiplicity) for r in records
        ],
        'memberships': [
            {
                'eigenvalue': _index_of(records, m.eigenvalue),
                'member': m.member,
                'pivot_entry': element_to_dict(m.pivot_entry),
            }
            for m in cert.memberships
        ],
        'failing_eigenvalue': None,
    }
    if cert.failing_eigenvalue is not None:
        doc['failing_eigenvalue'] = dict(
            algebraic_to_dict(cert.failing_eigenvalue.value),
            index=_index_of(records, cert.failing_eigenvalue),
        )
    if not records:
        doc['note'] = 'no positive eigenvalues'
    return doc


def outcome_to_dict(outcome):
    if isinstance(outcome, TerminatedAt):
        return {'result': 'terminated', 'step': outcome.step, 'message': f"terminated at k={outcome.step}"}
    if isinstance(outcome, SurvivedBound):
        return {
            'result': 'survived',
            'bound': outcome.bound,
            'message': f"guard positive for all k <= {outcome.bound} (inconclusive)",
        }
    raise TypeError(f"not a run outcome: {outcome!r}")


def witness_to_dict(program, witness, outcome=None):
    doc = {
        'format_version': FORMAT_VERSION,
        'kind': 'witness',
        'program': program_to_dict(program),
        'eigenvalue': algebraic_to_dict(witness.eigenvalue),
        'rank_r': witness.rank_r,
        'vector': [element_to_dict(x) for x in witness.vector],
        'scale': witness.scale,
        'scaled_vector': [element_to_dict(x) for x in witness.scaled_vector],
        'guard_value': element_to_dict(witness.guard_value),
    }
    if outcome is not None:
        doc['simulation'] = outcome_to_dict(outcome)
    return doc


# --- Independent checking -------------------------------------------------

def _multiplicity(chi, m):
    k = 0
    while True:
        quotient, remainder = chi.div(m)
        if not remainder.is_zero:
            return k
        k += 1
        chi = quotient


def _read_algebraic(entry):
    minpoly = poly_from_coeffs(entry['minpoly'])
    low, high = entry['interval']
    return AlgebraicNumber.checked(minpoly, IsolatingInterval(low, high))


def verify_certificate(doc):
    """
    Re-check a certificate document without trusting its derivation.
    Returns (ok, problems).
    """
    problems = []
    try:
        if doc.get('format_version') != FORMAT_VERSION:
            problems.append(f"unsupported format_version {doc.get('format_version')!r}")
            return False, problems
        program = HomogeneousProgram(doc['program']['A'], doc['program']['f'])
        A = [list(row) for row in program.update]
        n = program.dimension
        chi = char_poly(A)
        if [str(c) for c in poly_coeffs(chi)] != list(doc['characteristic_polynomial']['coefficients']):
            problems.append("characteristic polynomial does not match A")

        values = []
        for i, entry in enumerate(doc['positive_eigenvalues']):
            value = _read_algebraic(entry)
            if value.interval.low < 0:
                problems.append(f"eigenvalue {i}: interval is not inside the positive reals")
            multiplicity = _multiplicity(chi, value.minpoly)
            if multiplicity == 0:
                problems.append(f"eigenvalue {i}: minimal polynomial does not divide the characteristic polynomial")
            elif multiplicity != entry['multiplicity']:
                problems.append(f"eigenvalue {i}: multiplicity {entry['multiplicity']} should be {multiplicity}")
            if any(value.same_root(other) for other in values):
                problems.append(f"eigenvalue {i} is listed twice")
            values.append(value)

        q = squarefree_part(chi)
        positive_roots = sturm_count(q, 0, cauchy_bound(q)) if q.degree() >= 1 else 0
        if positive_roots != len(values):
            problems.append(f"{len(values)} positive eigenvalue(s) listed, characteristic polynomial has {positive_roots}")

        checked = {}
        for entry in doc['memberships']:
            i = entry['eigenvalue']
            if isinstance(i, bool) or not isinstance(i, int) or not 0 <= i < len(values):
                raise IndexError(f"membership refers to eigenvalue {i!r} of {len(values)}")
            value = values[i]
            if value.minpoly not in checked:
                E = generalized_eigenmatrix(A, value, n, chi)
                checked[value.minpoly] = row_space_contains(E, lift_vector(value.field, program.guard))[0]
            if checked[value.minpoly] != entry['member']:
                problems.append(f"membership for eigenvalue {i} does not re-check")

        verdict = Verdict(doc['verdict'])
        listed = {entry['eigenvalue']: entry['member'] for entry in doc['memberships']}
        if verdict is Verdict.TERMINATING:
            if set(listed) != set(range(len(values))) or not all(listed.values()):
                problems.append("terminating verdict needs a passing membership for every positive eigenvalue")
        else:
            failing = doc.get('failing_eigenvalue')
            if failing is None or listed.get(failing['index']) is not False:
                problems.append("nonterminating verdict needs a failing eigenvalue with a failed membership")
    except (KeyError, TypeError, ValueError, IndexError, AttributeError, TerminationError) as e:
        problems.append(f"malformed certificate: {e}")

    if problems:
        logger.info(f"[VERIFY] certificate rejected: {problems}")
    return not problems, problems
