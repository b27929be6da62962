"""
Loop front end: the loop DSL, sequential-to-simultaneous propagation,
homogenization, and the matrix document format.

DSL example::

    vars x, y;
    while (3x - y > 0) {
      x := 3x - 2y;
      y := 4/3x - 5/3y;
    }

The ``vars`` line is optional; without it the variables are every
identifier of the loop, in alphabetical order.
"""
import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from lark import Lark, Transformer
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken, VisitError

from decision import HomogeneousProgram
from errors import (
    DecimalLiteral,
    DegenerateBody,
    DslSyntaxError,
    DuplicateAssignment,
    InvalidConfig,
    MatrixDocumentError,
    TerminationError,
    UndeclaredVariable,
    UnsupportedComparator,
    UnsupportedGuardCount,
)
from exact_arith import to_rational

logger = logging.getLogger(__name__)

GRAMMAR = r"""
program: decl? "while" "(" guard ("&&" guard)* ")" "{" (assign ";")* "}"
decl: "vars" NAME ("," NAME)* ";"
guard: expr COMPARATOR expr
assign: NAME ":=" expr
expr: ADDOP? term (ADDOP term)*

term: coeff "*"? NAME       -> scaled
    | NAME                  -> variable
    | coeff                 -> constant

coeff: INT "/" INT          -> fraction
     | INT                  -> integer
     | DECIMAL              -> decimal
     | "(" ADDOP? coeff ")" -> paren

COMPARATOR: />=?/
ADDOP: /[+-]/
NAME: /[A-Za-z_][A-Za-z0-9_]*/
INT: /[0-9]+/
DECIMAL.2: /[0-9]+\.[0-9]*/
COMMENT.3: /\/\/[^\n]*/ | /\/\*(.|\n)*?\*\//

%import common.WS
%ignore WS
%ignore COMMENT
"""

_parser = Lark(GRAMMAR, start='program', parser='lalr', propagate_positions=True)


@dataclass(frozen=True)
class AffineExpr:
    coefficients: tuple
    constant: Fraction = Fraction(0)


@dataclass(frozen=True)
class LinearInequality:
    """coefficients . x  comparator  constant"""
    coefficients: tuple
    comparator: str
    constant: Fraction


@dataclass(frozen=True)
class Assignment:
    target: str
    expression: AffineExpr


@dataclass(frozen=True)
class SourceLoop:
    variables: tuple
    guard: tuple
    body: tuple


@dataclass(frozen=True)
class AffineSystem:
    """x := A x + c  under  F x (comparator) b, row by row."""
    update: tuple
    offset: tuple
    guard_matrix: tuple
    guard_bound: tuple
    comparators: tuple
    variables: tuple


# --- Parsing ---------------------------------------------------------------

class _Decl(NamedTuple):
    names: list


class _Guard(NamedTuple):
    left: list
    comparator: object
    right: list


class _Assign(NamedTuple):
    target: object
    terms: list


class _LoopTransformer(Transformer):
    """Turns the parse tree into raw terms: (coefficient, NAME token or None)."""

    def integer(self, items):
        return Fraction(int(items[0]))

    def fraction(self, items):
        numerator, denominator = items
        if int(denominator) == 0:
            raise DslSyntaxError("zero denominator", denominator.line, denominator.column)
        return Fraction(int(numerator), int(denominator))

    def decimal(self, items):
        token = items[0]
        raise DecimalLiteral(f"decimal literal {str(token)!r}; write it as a fraction like '3/2'", token.line, token.column)

    def paren(self, items):
        value = items[-1]
        return -value if len(items) == 2 and items[0] == '-' else value

    def scaled(self, items):
        return items[0], items[1]

    def variable(self, items):
        return Fraction(1), items[0]

    def constant(self, items):
        return items[0], None

    def expr(self, items):
        terms = []
        sign = 1
        for item in items:
            if isinstance(item, tuple):
                coeff, name = item
                terms.append((sign * coeff, name))
                sign = 1
            else:
                sign = -1 if item == '-' else 1
        return terms

    def guard(self, items):
        return _Guard(*items)

    def assign(self, items):
        return _Assign(*items)

    def decl(self, items):
        return _Decl(list(items))

    def program(self, items):
        return list(items)


def _syntax_error(err, text):
    line = getattr(err, 'line', None)
    column = getattr(err, 'column', None)
    if line is None or line < 1:
        line = column = None
    if isinstance(err, UnexpectedEOF):
        message = "unexpected end of input"
    elif isinstance(err, UnexpectedToken):
        expected = ', '.join(sorted(err.expected)) if err.expected else 'nothing'
        message = f"unexpected {str(err.token)!r}, expected one of: {expected}"
    elif isinstance(err, UnexpectedCharacters):
        message = f"unexpected character {text[err.pos_in_stream]!r}"
    else:
        message = "invalid loop syntax"
    return DslSyntaxError(message, line, column)


def _names_in(items):
    for item in items:
        if isinstance(item, _Guard):
            yield from (name for _, name in item.left + item.right if name is not None)
        elif isinstance(item, _Assign):
            yield item.target
            yield from (name for _, name in item.terms if name is not None)


def _collect(terms, index, variables):
    coefficients = [Fraction(0)] * len(variables)
    constant = Fraction(0)
    for coeff, name in terms:
        if name is None:
            constant += coeff
            continue
        if str(name) not in index:
            raise UndeclaredVariable(f"variable {str(name)!r} is not declared", name.line, name.column)
        coefficients[index[str(name)]] += coeff
    return coefficients, constant


def parse(text):
    """Parse loop DSL text into a SourceLoop."""
    try:
        items = _LoopTransformer().transform(_parser.parse(text))
    except UnexpectedInput as err:
        raise _syntax_error(err, text) from None
    except VisitError as err:
        if isinstance(err.orig_exc, TerminationError):
            raise err.orig_exc from None
        raise

    decl = next((item for item in items if isinstance(item, _Decl)), None)
    if decl is not None:
        seen = set()
        for name in decl.names:
            if str(name) in seen:
                raise DslSyntaxError(f"variable {str(name)!r} declared twice", name.line, name.column)
            seen.add(str(name))
        variables = tuple(str(name) for name in decl.names)
    else:
        variables = tuple(sorted({str(name) for name in _names_in(items)}))
    index = {name: i for i, name in enumerate(variables)}

    guards = []
    body = []
    assigned = set()
    for item in items:
        if isinstance(item, _Guard):
            left, left_constant = _collect(item.left, index, variables)
            right, right_constant = _collect(item.right, index, variables)
            coefficients = tuple(a - b for a, b in zip(left, right))
            guards.append(LinearInequality(coefficients, str(item.comparator), right_constant - left_constant))
        elif isinstance(item, _Assign):
            target = item.target
            if str(target) not in index:
                raise UndeclaredVariable(f"variable {str(target)!r} is not declared", target.line, target.column)
            if str(target) in assigned:
                raise DuplicateAssignment(f"{str(target)!r} is assigned twice in the loop body", target.line, target.column)
            assigned.add(str(target))
            coefficients, constant = _collect(item.terms, index, variables)
            body.append(Assignment(str(target), AffineExpr(tuple(coefficients), constant)))

    if not body:
        raise DegenerateBody("loop body has no assignments")
    return SourceLoop(variables, tuple(guards), tuple(body))


# --- Printing --------------------------------------------------------------

def _format_affine(coefficients, constant, variables):
    terms = []
    for name, c in zip(variables, coefficients):
        if c == 0:
            continue
        body = name if abs(c) == 1 else f"{abs(c)}*{name}"
        terms.append(('-' if c < 0 else '+', body))
    if constant != 0 or not terms:
        terms.append(('-' if constant < 0 else '+', str(abs(constant))))
    text = ('-' if terms[0][0] == '-' else '') + terms[0][1]
    for sign, body in terms[1:]:
        text += f" {sign} {body}"
    return text


def pretty(loop):
    """DSL text for a SourceLoop; parse(pretty(loop)) == loop."""
    guard = ' && '.join(
        f"{_format_affine(g.coefficients, Fraction(0), loop.variables)} {g.comparator} {_format_affine((), g.constant, ())}"
        for g in loop.guard
    )
    lines = [f"vars {', '.join(loop.variables)};", f"while ({guard}) {{"]
    for assignment in loop.body:
        expr = assignment.expression
        lines.append(f"  {assignment.target} := {_format_affine(expr.coefficients, expr.constant, loop.variables)};")
    lines.append("}")
    return '\n'.join(lines) + '\n'


# --- Propagation and homogenization ---------------------------------------

def propagate_sequential(loop):
    """
    Rewrite the sequential body as one simultaneous affine update over the
    pre-iteration state. Unassigned variables keep their value.
    """
    n = len(loop.variables)
    index = {name: i for i, name in enumerate(loop.variables)}
    rows = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    offsets = [Fraction(0)] * n
    for assignment in loop.body:
        expr = assignment.expression
        row = [Fraction(0)] * n
        offset = expr.constant
        for j, a in enumerate(expr.coefficients):
            if a == 0:
                continue
            row = [r + a * x for r, x in zip(row, rows[j])]
            offset += a * offsets[j]
        target = index[assignment.target]
        rows[target] = row
        offsets[target] = offset
    return AffineSystem(
        update=tuple(tuple(row) for row in rows),
        offset=tuple(offsets),
        guard_matrix=tuple(g.coefficients for g in loop.guard),
        guard_bound=tuple(g.constant for g in loop.guard),
        comparators=tuple(g.comparator for g in loop.guard),
        variables=loop.variables,
    )


def _fresh_name(variables):
    name, i = 'z', 0
    while name in variables:
        i += 1
        name = f"z{i}"
    return name


def homogenize(system, source=None):
    """
    Single strict guard only. An affine loop gains a variable z with z := z,
    guard f.x - b.z > 0, which matches the original at z = 1.
    """
    if len(system.guard_matrix) != 1:
        raise UnsupportedGuardCount(f"loops with {len(system.guard_matrix)} guard conditions are not supported; exactly one is required")
    if system.comparators[0] != '>':
        raise UnsupportedComparator(f"guard comparator {system.comparators[0]!r} is not supported; use a strict '>'")
    A, c = system.update, system.offset
    f, b = system.guard_matrix[0], system.guard_bound[0]
    if all(x == 0 for x in c) and b == 0:
        return HomogeneousProgram(A, f, system.variables, source)
    n = len(A)
    update = [list(A[i]) + [c[i]] for i in range(n)]
    update.append([Fraction(0)] * n + [Fraction(1)])
    variables = tuple(system.variables) + (_fresh_name(system.variables),)
    logger.debug("[FRONTEND] homogenized with extra variable %s", variables[-1])
    return HomogeneousProgram(update, tuple(f) + (-b,), variables, source)


# --- Matrix documents ------------------------------------------------------

def _rational_entry(value, where):
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise MatrixDocumentError(f"{where}: expected an integer or a rational string such as '-4/3', got {value!r}")
    try:
        return to_rational(value)
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise MatrixDocumentError(f"{where}: {e}") from None


def _rational_list(values, length, where):
    if not isinstance(values, list) or len(values) != length:
        raise MatrixDocumentError(f"{where}: expected a list of {length} entries")
    return [_rational_entry(v, f"{where}[{i}]") for i, v in enumerate(values)]


def parse_matrix_document(text, source=None):
    """
    JSON document {"n": n, "A": [[...]], "f": [...], "b": r, "c": [...]}
    with exact entries. Nonzero b or c is homogenized like an affine DSL loop.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise MatrixDocumentError(f"not a JSON document: {e.msg} (line {e.lineno}, column {e.colno})") from None
    if not isinstance(doc, dict):
        raise MatrixDocumentError("matrix document must be a JSON object")
    missing = [key for key in ('n', 'A', 'f') if key not in doc]
    if missing:
        raise MatrixDocumentError(f"missing field(s): {', '.join(missing)}")
    n = doc['n']
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise MatrixDocumentError(f"n must be a positive integer, got {n!r}")
    if not isinstance(doc['A'], list) or len(doc['A']) != n:
        raise MatrixDocumentError(f"A must have {n} rows")
    A = tuple(tuple(_rational_list(row, n, f"A[{i}]")) for i, row in enumerate(doc['A']))
    f = tuple(_rational_list(doc['f'], n, 'f'))
    c = tuple(_rational_list(doc['c'], n, 'c')) if 'c' in doc else (Fraction(0),) * n
    b = doc.get('b', 0)
    if isinstance(b, list):
        if len(b) != 1:
            raise MatrixDocumentError("b must be a single rational")
        b = b[0]
    b = _rational_entry(b, 'b')
    variables = doc.get('variables')
    if variables is None:
        variables = [f"x{i + 1}" for i in range(n)]
    if (not isinstance(variables, list) or len(variables) != n
            or not all(isinstance(v, str) and v for v in variables) or len(set(variables)) != n):
        raise MatrixDocumentError(f"variables must be a list of {n} distinct names")
    system = AffineSystem(A, c, (f,), (b,), ('>',), tuple(variables))
    return homogenize(system, source if source is not None else text)


def load_program(text, fmt=None):
    """Source text in either format to a HomogeneousProgram; fmt None detects JSON."""
    if fmt is None:
        fmt = 'matrix' if text.lstrip().startswith('{') else 'dsl'
    if fmt == 'matrix':
        return parse_matrix_document(text)
    if fmt == 'dsl':
        return homogenize(propagate_sequential(parse(text)), source=text)
    raise InvalidConfig(f"unknown input format {fmt!r}; use 'dsl' or 'matrix'")
