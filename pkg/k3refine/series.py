"""Truncated series arithmetic in the tower tau < q < u.

Products of the form prod (1 - s tau^a q^b u^n)^(-k) are expanded factor by factor with their
binomial series, so every coefficient stays an exact integer combination of monomials.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import BasisExtractionError, NonUnitalFactorError, ProductShapeError
from .laurent import ONE, ZERO, TauPolynomial, quantum_integer

logger = logging.getLogger(__name__)


class QLaurent:
    """Sparse Laurent polynomial in q whose coefficients are TauPolynomials."""

    __slots__ = ('_terms', '_hash')

    def __init__(self, terms=None):
        cleaned = {}
        if terms:
            for exponent, coefficient in terms.items():
                if not isinstance(coefficient, TauPolynomial):
                    coefficient = TauPolynomial.constant(coefficient)
                if coefficient:
                    cleaned[int(exponent)] = coefficient
        self._terms = cleaned
        self._hash = None

    @classmethod
    def _wrap(cls, terms):
        series = object.__new__(cls)
        series._terms = terms
        series._hash = None
        return series

    @classmethod
    def monomial(cls, exponent, coefficient=ONE):
        return cls({exponent: coefficient})

    @classmethod
    def constant(cls, coefficient):
        return cls({0: coefficient})

    def items(self):
        return sorted(self._terms.items())

    @property
    def terms(self):
        return dict(self.items())

    def coefficient(self, exponent):
        return self._terms.get(exponent, ZERO)

    @property
    def min_exponent(self):
        return min(self._terms) if self._terms else None

    @property
    def max_exponent(self):
        return max(self._terms) if self._terms else None

    def is_symmetric(self):
        """Invariant under q -> q^-1."""
        return all(self._terms.get(-e) == c for e, c in self._terms.items())

    def is_palindromic(self):
        """Symmetric in q with every coefficient palindromic in tau."""
        return self.is_symmetric() and all(c.is_palindromic() for c in self._terms.values())

    def is_integral(self):
        return all(c.is_integral() for c in self._terms.values())

    @staticmethod
    def _coerce(other):
        if isinstance(other, QLaurent):
            return other
        if isinstance(other, (TauPolynomial, int, Fraction)):
            return QLaurent.constant(other)
        return None

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __neg__(self):
        return QLaurent._wrap({e: -c for e, c in self._terms.items()})

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        result = dict(self._terms)
        for exponent, coefficient in other._terms.items():
            value = result.get(exponent, ZERO) + coefficient
            if value:
                result[exponent] = value
            else:
                result.pop(exponent, None)
        return QLaurent._wrap(result)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (TauPolynomial, int, Fraction)):
            if not other:
                return QLaurent()
            return QLaurent._wrap({e: c * other for e, c in self._terms.items()})
        if not isinstance(other, QLaurent):
            return NotImplemented
        result = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exponent = e1 + e2
                result[exponent] = result.get(exponent, ZERO) + c1 * c2
        return QLaurent._wrap({e: c for e, c in result.items() if c})

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("QLaurent powers must be nonnegative integers")
        result = QLaurent.constant(ONE)
        for _ in range(exponent):
            result = result * self
        return result

    def __repr__(self):
        inner = ', '.join(f"q^{e}: {c}" for e, c in self.items())
        return f"<QLaurent {{{inner}}}>"


class UTruncatedSeries:
    """Power series in u with QLaurent coefficients, known up to and including u^order."""

    __slots__ = ('_order', '_coefficients')

    def __init__(self, coefficients, order=None):
        values = [c if isinstance(c, QLaurent) else QLaurent.constant(c) for c in coefficients]
        if order is None:
            order = len(values) - 1
        if order < 0:
            raise ValueError("A truncated series needs a nonnegative order")
        values = values[:order + 1]
        values.extend(QLaurent() for _ in range(order + 1 - len(values)))
        self._order = order
        self._coefficients = tuple(values)

    @classmethod
    def one(cls, order):
        return cls([QLaurent.constant(ONE)], order)

    @property
    def order(self):
        return self._order

    @property
    def coefficients(self):
        return self._coefficients

    def coefficient(self, power):
        if power < 0 or power > self._order:
            raise IndexError(f"u^{power} is outside the series order {self._order}")
        return self._coefficients[power]

    def truncate(self, order):
        return UTruncatedSeries(self._coefficients, min(order, self._order))

    def is_integral(self):
        return all(c.is_integral() for c in self._coefficients)

    def __eq__(self, other):
        if not isinstance(other, UTruncatedSeries):
            return NotImplemented
        return self._order == other._order and self._coefficients == other._coefficients

    def __hash__(self):
        return hash((self._order, self._coefficients))

    def __mul__(self, other):
        if not isinstance(other, UTruncatedSeries):
            return NotImplemented
        return multiply_truncated(self, other)

    def __repr__(self):
        return f"<UTruncatedSeries order={self._order}>"


@dataclass(frozen=True)
class ProductFactor:
    """The factor (1 - sign * tau^tau_shift * q^q_shift * u^u_power)^(-multiplicity)."""

    sign: int
    tau_shift: int
    q_shift: int
    u_power: int
    multiplicity: int = 1

    def __post_init__(self):
        if self.u_power < 1:
            raise NonUnitalFactorError(f"non-unital factor: u_power = {self.u_power}")
        if self.sign not in (1, -1):
            raise ValueError(f"Factor sign must be +1 or -1, got {self.sign}")
        if self.multiplicity < 1:
            raise ValueError(f"Factor multiplicity must be positive, got {self.multiplicity}")

    @property
    def monomial(self):
        return QLaurent.monomial(self.q_shift, TauPolynomial.monomial(self.tau_shift, self.sign))


def multiply_truncated(a, b):
    """Cauchy product of two u-series, truncated at the smaller order."""
    order = min(a.order, b.order)
    result = []
    for m in range(order + 1):
        total = QLaurent()
        for i in range(m + 1):
            left = a.coefficients[i]
            right = b.coefficients[m - i]
            if left and right:
                total = total + left * right
        result.append(total)
    return UTruncatedSeries(result, order)


def _binomial_terms(factor, order):
    # (1 - z)^(-k) = sum_j C(k + j - 1, j) z^j, with z carrying u^(j * u_power)
    terms = []
    power = QLaurent.constant(ONE)
    j = 0
    while j * factor.u_power <= order:
        terms.append((j * factor.u_power, power * comb(factor.multiplicity + j - 1, j)))
        power = power * factor.monomial
        j += 1
    return terms


def _apply_factor(coefficients, factor, order):
    terms = _binomial_terms(factor, order)
    result = []
    for m in range(order + 1):
        total = QLaurent()
        for shift, term in terms:
            if shift > m:
                break
            source = coefficients[m - shift]
            if source:
                total = total + term * source
        result.append(total)
    return result


def expand_factor(factor, order):
    """Binomial expansion of a single factor as a truncated series."""
    return UTruncatedSeries(_apply_factor(UTruncatedSeries.one(order).coefficients, factor, order),
                            order)


def expand_product(factors, order):
    """Multiply out a finite product of ProductFactors modulo u^(order + 1).

    Factors with u_power > order are congruent to 1 and are skipped.
    """
    if order < 0:
        raise ValueError(f"Expansion order must be nonnegative, got {order}")
    coefficients = list(UTruncatedSeries.one(order).coefficients)
    applied = 0
    for factor in factors:
        if factor.u_power < 1:
            raise NonUnitalFactorError()
        if factor.u_power > order:
            continue
        coefficients = _apply_factor(coefficients, factor, order)
        applied += 1
    logger.debug(f"Expanded product of {applied} factors to u^{order}")
    return UTruncatedSeries(coefficients, order)


def assert_integral(series, label):
    """Raise ProductShapeError unless every coefficient of the series is an integer."""
    for power, coefficient in enumerate(series.coefficients):
        if not coefficient.is_integral():
            raise ProductShapeError(f"{label}: u^{power} coefficient has a non-integer entry")


def kernel():
    """The symmetric kernel q^-1 + [2]_t + q."""
    return QLaurent({-1: ONE, 0: quantum_integer(2), 1: ONE})


def divide_by_kernel(numerator, chi_min, chi_max):
    """Solve (q^-1 + [2]_t + q) * sum_chi P_chi q^chi = numerator for chi_min <= chi <= chi_max.

    Uses the forward recurrence P_chi = C_(chi-1) - [2]_t P_(chi-1) - P_(chi-2), with the two
    coefficients below chi_min equal to zero.
    """
    if numerator and numerator.min_exponent < chi_min - 1:
        raise ValueError(
            f"chi_min = {chi_min} is above the support of the numerator "
            f"(lowest q-exponent {numerator.min_exponent})"
        )
    two = quantum_integer(2)
    solution = {}
    previous, before = ZERO, ZERO
    for chi in range(chi_min, chi_max + 1):
        current = numerator.coefficient(chi - 1) - two * previous - before
        solution[chi] = current
        before, previous = previous, current
    return solution


def _laurent_product(a, b, zero):
    result = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            exponent = e1 + e2
            result[exponent] = result.get(exponent, zero) + c1 * c2
    return {e: c for e, c in result.items() if c}


def _basis_powers(center, degree):
    unit = center ** 0
    zero = center * 0
    basis = {-1: unit, 0: center, 1: unit}
    powers = [{0: unit}]
    for _ in range(degree):
        powers.append(_laurent_product(powers[-1], basis, zero))
    return powers


def extract_kernel_basis(polynomial, center):
    """Write a palindromic Laurent polynomial in x as sum_g c_g (x^-1 + center + x)^g.

    ``polynomial`` maps x-exponents to elements of a commutative ring (TauPolynomial, Fraction,
    ...) and ``center`` lives in the same ring. Returns [c_0, ..., c_h], h the x-degree. The top
    coefficient is stripped first, then the procedure repeats on the remainder.
    """
    zero = center * 0
    remainder = {e: c for e, c in polynomial.items() if c}
    if any(remainder.get(-e, zero) != c for e, c in remainder.items()):
        raise BasisExtractionError()
    if not remainder:
        return []

    degree = max(remainder)
    powers = _basis_powers(center, degree)
    coefficients = [zero] * (degree + 1)
    for g in range(degree, -1, -1):
        top = remainder.get(g, zero)
        coefficients[g] = top
        if not top:
            continue
        for exponent, value in powers[g].items():
            updated = remainder.get(exponent, zero) - top * value
            if updated:
                remainder[exponent] = updated
            else:
                remainder.pop(exponent, None)
    if remainder:
        raise BasisExtractionError()
    return coefficients


def reconstruct_from_basis(coefficients, center):
    """Inverse of extract_kernel_basis: sum_g c_g (x^-1 + center + x)^g as an exponent mapping."""
    zero = center * 0
    powers = _basis_powers(center, max(len(coefficients) - 1, 0))
    result = {}
    for g, coefficient in enumerate(coefficients):
        if not coefficient:
            continue
        for exponent, value in powers[g].items():
            result[exponent] = result.get(exponent, zero) + coefficient * value
    return {e: c for e, c in result.items() if c}
