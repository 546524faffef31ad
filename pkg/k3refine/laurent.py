"""Exact Laurent polynomials in tau = t^(1/2) and their field of fractions.

Every refined invariant in this package is either a Laurent polynomial in tau or a quotient of
two of them. Half-integer powers of t never appear: t^k is stored as tau^(2k).
"""
from fractions import Fraction
from math import gcd, lcm

from .errors import ZeroDenominatorError

# Arbitrary precision rationals, always in lowest terms with a positive denominator.
RationalScalar = Fraction


def _scalar(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"Expected an integer or Fraction coefficient, got {type(value).__name__}")


def _format_t_power(exponent):
    if exponent == 0:
        return ''
    if exponent == 2:
        return 't'
    if exponent % 2 == 0:
        return f"t^{exponent // 2}"
    return f"t^({exponent}/2)"


class TauPolynomial:
    """Sparse Laurent polynomial in tau with rational coefficients.

    Instances are immutable; no zero coefficient is ever stored.
    """

    __slots__ = ('_terms', '_hash')

    def __init__(self, terms=None):
        cleaned = {}
        if terms:
            items = terms.items() if hasattr(terms, 'items') else terms
            for exponent, coefficient in items:
                exponent = int(exponent)
                cleaned[exponent] = cleaned.get(exponent, Fraction(0)) + _scalar(coefficient)
        self._terms = {e: c for e, c in cleaned.items() if c}
        self._hash = None

    @classmethod
    def _wrap(cls, terms):
        # terms must already be free of zeros and hold Fraction values
        polynomial = object.__new__(cls)
        polynomial._terms = terms
        polynomial._hash = None
        return polynomial

    @classmethod
    def _from_dense(cls, offset, coefficients):
        return cls._wrap({offset + i: c for i, c in enumerate(coefficients) if c})

    @classmethod
    def monomial(cls, exponent, coefficient=1):
        return cls({exponent: coefficient})

    @classmethod
    def constant(cls, value):
        return cls({0: value})

    @classmethod
    def from_t(cls, terms):
        """Build from a mapping of integer t-exponents to coefficients."""
        return cls({2 * int(e): c for e, c in terms.items()})

    # --- inspection -------------------------------------------------------

    def items(self):
        return sorted(self._terms.items())

    @property
    def terms(self):
        return dict(self.items())

    def coefficient(self, exponent):
        return self._terms.get(exponent, Fraction(0))

    @property
    def min_exponent(self):
        return min(self._terms) if self._terms else None

    @property
    def max_exponent(self):
        return max(self._terms) if self._terms else None

    @property
    def leading_coefficient(self):
        return self._terms[self.max_exponent] if self._terms else Fraction(0)

    def is_constant(self):
        return not self._terms or set(self._terms) == {0}

    def is_integral(self):
        return all(c.denominator == 1 for c in self._terms.values())

    def has_even_support(self):
        """True when this is a Laurent polynomial in t (no odd tau-exponents)."""
        return all(e % 2 == 0 for e in self._terms)

    def _to_dense(self):
        low = self.min_exponent
        dense = [Fraction(0)] * (self.max_exponent - low + 1)
        for exponent, coefficient in self._terms.items():
            dense[exponent - low] = coefficient
        return low, dense

    # --- ring structure ---------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, TauPolynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return TauPolynomial.constant(other)
        return None

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, TauRational):
            return other == self
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __neg__(self):
        return TauPolynomial._wrap({e: -c for e, c in self._terms.items()})

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        result = dict(self._terms)
        for exponent, coefficient in other._terms.items():
            value = result.get(exponent, Fraction(0)) + coefficient
            if value:
                result[exponent] = value
            else:
                result.pop(exponent, None)
        return TauPolynomial._wrap(result)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        result = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exponent = e1 + e2
                result[exponent] = result.get(exponent, Fraction(0)) + c1 * c2
        return TauPolynomial._wrap({e: c for e, c in result.items() if c})

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("TauPolynomial powers must be nonnegative integers")
        result = ONE
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDenominatorError()
            return TauPolynomial._wrap({e: c / other for e, c in self._terms.items()})
        if isinstance(other, (TauPolynomial, TauRational)):
            return TauRational(self) / other
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return TauRational(other) / self
        return NotImplemented

    def shift(self, amount):
        """Multiply by tau^amount."""
        return TauPolynomial._wrap({e + amount: c for e, c in self._terms.items()})

    def exact_quotient(self, divisor):
        """Return self / divisor when it is again a Laurent polynomial, otherwise None."""
        if not divisor:
            raise ZeroDenominatorError()
        if not self:
            return ZERO
        num_offset, num_dense = self._to_dense()
        den_offset, den_dense = divisor._to_dense()
        quotient, remainder = _poly_divmod(num_dense, den_dense)
        if remainder:
            return None
        return TauPolynomial._from_dense(num_offset - den_offset, quotient)

    # --- substitutions and evaluation -------------------------------------

    def substitute_power(self, k):
        """Apply tau -> tau^k, i.e. t -> t^k."""
        if k < 1:
            raise ValueError(f"substitute_power needs k >= 1, got {k}")
        return TauPolynomial._wrap({k * e: c for e, c in self._terms.items()})

    def invert_variable(self):
        return TauPolynomial._wrap({-e: c for e, c in self._terms.items()})

    def is_palindromic(self):
        return all(self._terms.get(-e) == c for e, c in self._terms.items())

    def evaluate_at_one(self):
        return sum(self._terms.values(), Fraction(0))

    def evaluate(self, tau):
        tau = _scalar(tau)
        return sum((c * tau ** e for e, c in self._terms.items()), Fraction(0))

    # --- serialisation ----------------------------------------------------

    def to_json(self):
        return [[e, str(c)] for e, c in self.items()]

    def to_tokens(self):
        return ';'.join(f"{e}:{c}" for e, c in self.items())

    def __str__(self):
        if not self._terms:
            return '0'
        text = ''
        for index, (exponent, coefficient) in enumerate(self.items()):
            power = _format_t_power(exponent)
            magnitude = abs(coefficient)
            if not power:
                body = str(magnitude)
            elif magnitude == 1:
                body = power
            else:
                body = f"{magnitude}*{power}"
            if index == 0:
                text = f"-{body}" if coefficient < 0 else body
            else:
                text += f" {'-' if coefficient < 0 else '+'} {body}"
        return text

    def __repr__(self):
        return f"<TauPolynomial {self.to_tokens() or '0'}>"


ZERO = TauPolynomial()
ONE = TauPolynomial.constant(1)
TAU = TauPolynomial.monomial(1)
T = TauPolynomial.monomial(2)


# --- dense polynomial helpers (ascending coefficient lists over Q) -----------

def _trim(coefficients):
    while coefficients and not coefficients[-1]:
        coefficients.pop()
    return coefficients


def _poly_divmod(dividend, divisor):
    dividend = _trim(list(dividend))
    divisor = _trim(list(divisor))
    if len(dividend) < len(divisor):
        return [], dividend
    quotient = [Fraction(0)] * (len(dividend) - len(divisor) + 1)
    lead = divisor[-1]
    for i in range(len(quotient) - 1, -1, -1):
        factor = dividend[i + len(divisor) - 1] / lead
        quotient[i] = factor
        if factor:
            for j, c in enumerate(divisor):
                dividend[i + j] -= factor * c
    return _trim(quotient), _trim(dividend[:len(divisor) - 1])


def _poly_gcd(a, b):
    """Monic Euclidean gcd over the rationals."""
    a = _trim(list(a))
    b = _trim(list(b))
    while b:
        _, remainder = _poly_divmod(a, b)
        a, b = b, remainder
    lead = a[-1]
    return [c / lead for c in a]


def _canonical_pair(numerator, denominator):
    if not denominator:
        raise ZeroDenominatorError()
    if not numerator:
        return ZERO, ONE
    num_offset, num_dense = numerator._to_dense()
    den_offset, den_dense = denominator._to_dense()
    common = _poly_gcd(num_dense, den_dense)
    if len(common) > 1:
        num_dense, _ = _poly_divmod(num_dense, common)
        den_dense, _ = _poly_divmod(den_dense, common)
    # integer denominator with content 1 and positive leading coefficient
    scale = lcm(*(c.denominator for c in den_dense))
    content = gcd(*(int(c * scale) for c in den_dense))
    if den_dense[-1] < 0:
        content = -content
    factor = Fraction(scale, content)
    return (
        TauPolynomial._from_dense(num_offset - den_offset, [c * factor for c in num_dense]),
        TauPolynomial._from_dense(0, [c * factor for c in den_dense]),
    )


def _as_polynomial(value):
    if isinstance(value, TauPolynomial):
        return value
    if isinstance(value, (int, Fraction)):
        return TauPolynomial.constant(value)
    raise TypeError(f"Cannot use {type(value).__name__} as a Laurent polynomial")


class TauRational:
    """Reduced quotient of two Laurent polynomials in tau.

    Canonical form: no common factor, denominator with lowest exponent 0, integer coefficients
    of content 1 and a positive leading coefficient. Two equal values therefore always have
    identical numerator and denominator.
    """

    __slots__ = ('_numerator', '_denominator')

    def __init__(self, numerator, denominator=1):
        self._numerator, self._denominator = _canonical_pair(
            _as_polynomial(numerator), _as_polynomial(denominator)
        )

    @property
    def numerator(self):
        return self._numerator

    @property
    def denominator(self):
        return self._denominator

    @property
    def is_polynomial(self):
        return self._denominator == ONE

    def as_polynomial(self):
        if not self.is_polynomial:
            raise ValueError(f"{self} is not a Laurent polynomial")
        return self._numerator

    @staticmethod
    def _coerce(other):
        if isinstance(other, TauRational):
            return other
        if isinstance(other, (TauPolynomial, int, Fraction)):
            return TauRational(other)
        return None

    def __bool__(self):
        return bool(self._numerator)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._numerator == other._numerator and self._denominator == other._denominator

    def __hash__(self):
        return hash((self._numerator, self._denominator))

    def __neg__(self):
        return TauRational(-self._numerator, self._denominator)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return TauRational(
            self._numerator * other._denominator + other._numerator * self._denominator,
            self._denominator * other._denominator,
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return TauRational(
            self._numerator * other._numerator, self._denominator * other._denominator
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not other:
            raise ZeroDenominatorError()
        return TauRational(
            self._numerator * other._denominator, self._denominator * other._numerator
        )

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def substitute_power(self, k):
        return TauRational(
            self._numerator.substitute_power(k), self._denominator.substitute_power(k)
        )

    def invert_variable(self):
        return TauRational(self._numerator.invert_variable(), self._denominator.invert_variable())

    def is_palindromic(self):
        return self.invert_variable() == self

    def is_integral(self):
        return self.is_polynomial and self._numerator.is_integral()

    def evaluate_at_one(self):
        denominator = self._denominator.evaluate_at_one()
        if not denominator:
            raise ZeroDenominatorError("zero denominator at tau = 1")
        return self._numerator.evaluate_at_one() / denominator

    def to_json(self):
        return {'num': self._numerator.to_json(), 'den': self._denominator.to_json()}

    def to_tokens(self):
        return f"{self._numerator.to_tokens()}|{self._denominator.to_tokens()}"

    def __str__(self):
        if self.is_polynomial:
            return str(self._numerator)
        return f"({self._numerator}) / ({self._denominator})"

    def __repr__(self):
        return f"<TauRational {self.to_tokens()}>"


# --- module level operations ------------------------------------------------

def quantum_integer(n):
    """[n]_t = tau^(n-1) + tau^(n-3) + ... + tau^(1-n); [0]_t = 0."""
    if n < 0:
        raise ValueError(f"quantum_integer needs n >= 0, got {n}")
    return TauPolynomial._wrap({n - 1 - 2 * i: Fraction(1) for i in range(n)})


def substitute_power(value, k):
    return value.substitute_power(k)


def invert_variable(value):
    return value.invert_variable()


def is_palindromic(value):
    return value.is_palindromic()


def evaluate_at_one(value):
    return value.evaluate_at_one()


_FRACTION_OPERATORS = {
    'add': lambda a, b: a + b,
    'sub': lambda a, b: a - b,
    'mul': lambda a, b: a * b,
    'div': lambda a, b: a / b,
}


def fraction_arithmetic(a, b, operator):
    """Exact add/sub/mul/div of two fractions, returned in canonical form."""
    try:
        apply = _FRACTION_OPERATORS[operator]
    except KeyError:
        raise ValueError(f"Unknown fraction operator '{operator}'") from None
    return apply(TauRational(a) if not isinstance(a, TauRational) else a,
                 TauRational(b) if not isinstance(b, TauRational) else b)
