"""
Exact scalars, univariate polynomials over Q and arithmetic in simple
number fields Q[t]/(m(t)).

Rationals are fractions.Fraction; polynomials are sympy Poly objects over
QQ in the generator ``t``. Nothing in this module touches floating point.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

from sympy import Poly, QQ, Rational, Symbol, roots, sturm

from errors import DegenerateInput, DivisionByZero, FieldMismatch

logger = logging.getLogger(__name__)

T = Symbol('t')

NEGATIVE, ZERO, POSITIVE = -1, 0, 1


# --- Rationals -------------------------------------------------------------

def to_rational(value):
    """
    Convert an exact scalar to a Fraction.

    Accepts int, Fraction, strings such as '-4/3', and sympy rationals.
    Floats and decimal strings are rejected: they are not exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise TypeError(f"floating-point value {value!r} is not exact; write it as a fraction like '3/2'")
    if isinstance(value, str):
        text = value.strip()
        if '.' in text or 'e' in text.lower():
            raise ValueError(f"decimal literal {value!r} is not accepted; write it as a fraction like '3/2'")
        return Fraction(text)
    if hasattr(value, 'p') and hasattr(value, 'q'):
        return Fraction(int(value.p), int(value.q))
    if hasattr(value, 'numerator') and hasattr(value, 'denominator'):
        return Fraction(int(value.numerator), int(value.denominator))
    raise TypeError(f"cannot interpret {value!r} as a rational number")


def rational_str(value):
    return str(to_rational(value))


# --- Polynomials -----------------------------------------------------------

def poly_from_coeffs(coeffs):
    """Build a polynomial in t from coefficients listed lowest degree first."""
    values = [to_rational(c) for c in coeffs]
    rep = [QQ(c.numerator, c.denominator) for c in reversed(values)] or [QQ(0)]
    return Poly.from_list(rep, T, domain=QQ)


def poly_coeffs(p):
    """Coefficients of p as Fractions, lowest degree first."""
    return [to_rational(c) for c in reversed(p.all_coeffs())]


def _high_first(p):
    return tuple(to_rational(c) for c in p.all_coeffs())


def horner(coeffs_high, x):
    acc = Fraction(0)
    for c in coeffs_high:
        acc = acc * x + c
    return acc


def evaluate(p, x):
    return horner(_high_first(p), to_rational(x))


def _interval_mul(a_lo, a_hi, b_lo, b_hi):
    products = (a_lo * b_lo, a_lo * b_hi, a_hi * b_lo, a_hi * b_hi)
    return min(products), max(products)


def interval_horner(coeffs_high, low, high):
    """Enclosure of the polynomial's values over [low, high]."""
    lo = hi = Fraction(0)
    for c in coeffs_high:
        lo, hi = _interval_mul(lo, hi, low, high)
        lo, hi = lo + c, hi + c
    return lo, hi


def poly_gcd(p, q):
    if p.is_zero and q.is_zero:
        raise DegenerateInput("gcd of two zero polynomials is undefined")
    return p.gcd(q).monic()


def squarefree_part(p):
    if p.is_zero:
        raise DegenerateInput("square-free part of the zero polynomial is undefined")
    if p.degree() < 1:
        return Poly(1, T, domain=QQ)
    return p.sqf_part().monic()


def irreducible_factors(p):
    """
    Monic irreducible factors of p over Q with multiplicities, sorted by
    degree then coefficients.
    """
    if p.is_zero or p.degree() < 1:
        raise DegenerateInput("factorization needs a polynomial of degree >= 1")
    _, factors = p.factor_list()
    result = [(factor.monic(), multiplicity) for factor, multiplicity in factors]
    result.sort(key=lambda item: (item[0].degree(), tuple(poly_coeffs(item[0]))))
    return result


def cauchy_bound(p):
    """Every complex root of p has absolute value below 1 + max|c_i| / |lead|."""
    coeffs = _high_first(p)
    lead = abs(coeffs[0])
    rest = [abs(c) for c in coeffs[1:]]
    return 1 + (max(rest) / lead if rest else Fraction(0))


@lru_cache(maxsize=256)
def _sturm_chain(p):
    return tuple(_high_first(q) for q in sturm(p))


def _sign_variations(chain, x):
    signs = [v for v in (horner(q, x) for q in chain) if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def sturm_count(p, low, high):
    """Number of distinct real roots of p in (low, high]."""
    chain = _sturm_chain(p)
    return _sign_variations(chain, to_rational(low)) - _sign_variations(chain, to_rational(high))


# --- Isolating intervals and real algebraic numbers -----------------------

@dataclass(frozen=True)
class IsolatingInterval:
    low: Fraction
    high: Fraction

    def __post_init__(self):
        object.__setattr__(self, 'low', to_rational(self.low))
        object.__setattr__(self, 'high', to_rational(self.high))
        if not self.low < self.high:
            raise DegenerateInput(f"empty isolating interval ({self.low}, {self.high})")

    @property
    def width(self):
        return self.high - self.low

    @property
    def midpoint(self):
        return (self.low + self.high) / 2

    def overlaps(self, other):
        return self.low < other.high and other.low < self.high

    def __str__(self):
        return f"({self.low}, {self.high})"


def _around_rational_root(p, root, half_width):
    while True:
        low, high = root - half_width, root + half_width
        if evaluate(p, low) != 0 and evaluate(p, high) != 0 and sturm_count(p, low, high) == 1:
            return IsolatingInterval(low, high)
        half_width /= 2


def _clean_interval(p, low, high):
    # (low, high] holds exactly one root; move the endpoints off roots and above 0
    while True:
        if evaluate(p, high) == 0:
            return _around_rational_root(p, high, (high - low) / 2)
        if low > 0 and evaluate(p, low) != 0:
            return IsolatingInterval(low, high)
        mid = (low + high) / 2
        if sturm_count(p, mid, high) == 1:
            low = mid
        else:
            high = mid


def _shrink(p, interval):
    low, high, mid = interval.low, interval.high, interval.midpoint
    if evaluate(p, mid) == 0:
        return _around_rational_root(p, mid, interval.width / 4)
    if sturm_count(p, low, mid) == 1:
        return IsolatingInterval(low, mid)
    return IsolatingInterval(mid, high)


def isolate_positive_roots(p):
    """
    Disjoint rational intervals, one per strictly positive real root of p,
    sorted by position. Counts are certified by Sturm sequences.
    """
    if p.is_zero:
        raise DegenerateInput("cannot isolate the roots of the zero polynomial")
    q = squarefree_part(p)
    if q.degree() < 1:
        return []
    bound = cauchy_bound(q)
    pending = [(Fraction(0), bound)]
    found = []
    while pending:
        low, high = pending.pop()
        count = sturm_count(q, low, high)
        if count == 0:
            continue
        if count == 1:
            found.append(_clean_interval(q, low, high))
            continue
        mid = (low + high) / 2
        pending.append((low, mid))
        pending.append((mid, high))
    found.sort(key=lambda interval: interval.low)
    for i in range(len(found) - 1):
        while found[i].high > found[i + 1].low:
            found[i] = _shrink(q, found[i])
            found[i + 1] = _shrink(q, found[i + 1])
    logger.debug("[ROOTS] %d positive root(s) of %s", len(found), q.as_expr())
    return found


@dataclass(frozen=True)
class AlgebraicNumber:
    """A real root of an irreducible monic polynomial, pinned by an interval."""
    minpoly: Poly
    interval: IsolatingInterval

    @classmethod
    def checked(cls, minpoly, interval):
        """Build from untrusted data, validating every invariant."""
        if minpoly.is_zero or minpoly.degree() < 1 or minpoly.LC() != 1:
            raise DegenerateInput("minimal polynomial must be monic of degree >= 1")
        if not minpoly.is_irreducible:
            raise DegenerateInput(f"{minpoly.as_expr()} is not irreducible over Q")
        if evaluate(minpoly, interval.low) == 0 or evaluate(minpoly, interval.high) == 0:
            raise DegenerateInput(f"interval {interval} has a root at an endpoint")
        if sturm_count(minpoly, interval.low, interval.high) != 1:
            raise DegenerateInput(f"interval {interval} does not isolate a single root of {minpoly.as_expr()}")
        return cls(minpoly, interval)

    @property
    def degree(self):
        return self.minpoly.degree()

    @property
    def is_rational(self):
        return self.degree == 1

    @property
    def rational_value(self):
        if not self.is_rational:
            raise DegenerateInput("algebraic number of degree > 1 has no rational value")
        return -poly_coeffs(self.minpoly)[0]

    @cached_property
    def field(self):
        return number_field(self.minpoly)

    def is_positive(self):
        return self.interval.low >= 0

    def refine(self):
        """Same number, interval at most half as wide."""
        low, high = self.interval.low, self.interval.high
        if self.is_rational:
            value = self.rational_value
            return AlgebraicNumber(self.minpoly, IsolatingInterval((low + value) / 2, (high + value) / 2))
        mid = (low + high) / 2
        if sturm_count(self.minpoly, low, mid) == 1:
            return AlgebraicNumber(self.minpoly, IsolatingInterval(low, mid))
        return AlgebraicNumber(self.minpoly, IsolatingInterval(mid, high))

    def same_root(self, other):
        if self.minpoly != other.minpoly or not self.interval.overlaps(other.interval):
            return False
        low = max(self.interval.low, other.interval.low)
        high = min(self.interval.high, other.interval.high)
        return sturm_count(self.minpoly, low, high) >= 1

    def describe(self):
        """Closed form such as 'sqrt(2) + 2' when sympy finds one; display only."""
        if self.is_rational:
            return str(self.rational_value)
        low = Rational(self.interval.low.numerator, self.interval.low.denominator)
        high = Rational(self.interval.high.numerator, self.interval.high.denominator)
        try:
            for candidate in roots(self.minpoly.as_expr(), T):
                if candidate.is_real and bool(candidate > low) and bool(candidate < high):
                    return str(candidate)
        except (TypeError, ValueError, NotImplementedError):
            pass
        return f"root of {self.minpoly.as_expr()} in {self.interval}"

    def __str__(self):
        return self.describe()


def separate(a, b):
    """Refine two distinct algebraic numbers until their intervals are disjoint."""
    while a.interval.overlaps(b.interval):
        a, b = a.refine(), b.refine()
    return a, b


def compare_algebraic(a, b):
    if a.same_root(b):
        return 0
    if a.is_rational and b.is_rational:
        return (a.rational_value > b.rational_value) - (a.rational_value < b.rational_value)
    a, b = separate(a, b)
    return -1 if a.interval.high <= b.interval.low else 1


# --- Number fields ---------------------------------------------------------

@dataclass(frozen=True)
class NumberField:
    modulus: Poly

    def __post_init__(self):
        m = self.modulus
        if m.is_zero or m.degree() < 1:
            raise DegenerateInput("number field modulus must have degree >= 1")
        if m.LC() != 1:
            raise DegenerateInput("number field modulus must be monic")
        if not m.is_irreducible:
            raise DegenerateInput(f"{m.as_expr()} is reducible over Q")

    @property
    def degree(self):
        return self.modulus.degree()

    def element(self, value):
        if isinstance(value, NumberFieldElement):
            _require_same_field(self, value.field)
            return value
        q = to_rational(value)
        return NumberFieldElement(self, Poly.from_list([QQ(q.numerator, q.denominator)], T, domain=QQ), reduced=True)

    def from_coeffs(self, coeffs):
        return NumberFieldElement(self, poly_from_coeffs(coeffs))

    @cached_property
    def zero(self):
        return self.element(0)

    @cached_property
    def one(self):
        return self.element(1)

    @cached_property
    def generator(self):
        return NumberFieldElement(self, Poly(T, T, domain=QQ))

    def __str__(self):
        return f"Q[t]/({self.modulus.as_expr()})"


@lru_cache(maxsize=128)
def number_field(modulus):
    return NumberField(modulus)


def _require_same_field(f, g):
    if f is not g and f != g:
        raise FieldMismatch(f"elements live in different fields: {f} and {g}")


class NumberFieldElement:
    """Residue class of a rational polynomial modulo the field's modulus."""
    __slots__ = ('field', 'rep')

    def __init__(self, field, rep, reduced=False):
        self.field = field
        self.rep = rep if reduced else rep.rem(field.modulus)

    def _coerce(self, other):
        if isinstance(other, NumberFieldElement):
            _require_same_field(self.field, other.field)
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.element(other)
        return None

    def is_zero(self):
        return self.rep.is_zero

    def __bool__(self):
        return not self.rep.is_zero

    def __add__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is None else nf_add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return NumberFieldElement(self.field, -self.rep, reduced=True)

    def __sub__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is None else nf_add(self, -other)

    def __rsub__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is None else nf_add(other, -self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return NumberFieldElement(self.field, self.rep.mul_ground(QQ(q.numerator, q.denominator)), reduced=True)
        other = self._coerce(other)
        return NotImplemented if other is None else nf_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is None else nf_mul(self, nf_inv(other))

    def __rtruediv__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is None else nf_mul(other, nf_inv(self))

    def __eq__(self, other):
        if isinstance(other, NumberFieldElement):
            if other.field is not self.field and other.field != self.field:
                return False
            return (self.rep - other.rep).is_zero
        if isinstance(other, (int, Fraction)):
            return (self.rep - self.field.element(other).rep).is_zero
        return NotImplemented

    def __hash__(self):
        coeffs = poly_coeffs(self.rep)
        if len(coeffs) <= 1:
            # equal to the rational of the same value, so hash like it
            return hash(coeffs[0] if coeffs else Fraction(0))
        return hash((self.field.modulus, tuple(coeffs)))

    def coefficients(self):
        """Representative coefficients, lowest degree first."""
        return poly_coeffs(self.rep)

    def to_text(self, symbol='λ'):
        terms = []
        for power, c in enumerate(self.coefficients()):
            if c == 0:
                continue
            if power == 0:
                body = str(abs(c))
            else:
                base = symbol if power == 1 else f"{symbol}^{power}"
                body = base if abs(c) == 1 else f"{abs(c)}*{base}"
            terms.append(('-' if c < 0 else '+', body))
        if not terms:
            return '0'
        text = ('-' if terms[0][0] == '-' else '') + terms[0][1]
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"NumberFieldElement({self.to_text('t')} mod {self.field.modulus.as_expr()})"

    def __str__(self):
        return self.to_text()


def nf_add(a, b):
    _require_same_field(a.field, b.field)
    return NumberFieldElement(a.field, a.rep + b.rep, reduced=True)


def nf_mul(a, b):
    _require_same_field(a.field, b.field)
    return NumberFieldElement(a.field, a.rep * b.rep)


def nf_inv(a):
    if a.rep.is_zero:
        raise DivisionByZero("zero has no inverse in a number field")
    if a.rep.degree() < 1:
        c = to_rational(a.rep.LC())
        return a.field.element(1 / c)
    # extended Euclid against the modulus
    return NumberFieldElement(a.field, a.rep.invert(a.field.modulus))


def refine_sign(e, root):
    """
    Sign of e under the embedding t -> root, plus the refined root so callers
    deciding many signs can keep narrowing the same interval.
    """
    _require_same_field(e.field, root.field)
    if e.rep.is_zero:
        return ZERO, root
    coeffs = _high_first(e.rep)
    if root.is_rational:
        value = horner(coeffs, root.rational_value)
        return (POSITIVE if value > 0 else NEGATIVE), root
    current = root
    while True:
        lo, hi = interval_horner(coeffs, current.interval.low, current.interval.high)
        if lo > 0:
            return POSITIVE, current
        if hi < 0:
            return NEGATIVE, current
        current = current.refine()


def sign_of(e, root):
    if root.minpoly != e.field.modulus:
        raise FieldMismatch(f"root of {root.minpoly.as_expr()} does not embed {e.field}")
    sign, _ = refine_sign(e, root)
    return sign
