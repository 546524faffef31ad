"""Refined sheaf-counting invariants of local K3 surfaces.

Every table here is read off one of three infinite products:

* the Hilbert scheme product  prod (1-q^n)^-20 (1-t q^n)^-2 (1-t^-1 q^n)^-2,
* the stable pairs product in q and u (its u^h coefficient, divided by the kernel
  q^-1 + [2]_t + q, gives P^h_chi; written in powers of the kernel it gives n^h_g),
* the instanton product, which has the same shape as the Hilbert scheme product but in u.

The Hilbert scheme and instanton products are expanded independently and compared; that
agreement is part of what the identity suite verifies.
"""
import logging
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import InstantonCrossCheckError, KKVIntegralityError, ProductShapeError
from .laurent import T, ZERO, TauPolynomial, TauRational, quantum_integer
from .models import (
    BpsTable,
    GVTable,
    HilbGenusTable,
    PairsTable,
    VWParams,
    check_square_divisibility,
    divisors,
)
from .series import (
    ProductFactor,
    UTruncatedSeries,
    assert_integral,
    divide_by_kernel,
    expand_factor,
    expand_product,
    extract_kernel_basis,
    multiply_truncated,
)

logger = logging.getLogger(__name__)

# Factor families as (sign, tau_shift, q_shift, multiplicity); one factor per family and u^n.
HILB_FAMILIES = (
    (1, 0, 0, 20),
    (1, 2, 0, 2),
    (1, -2, 0, 2),
)
KKV_FAMILIES = (
    (1, 0, 0, 20),
    (1, 2, 0, 2),
    (1, -2, 0, 2),
)
KY_FAMILIES = (
    (-1, -1, 1, 1),
    (-1, 1, -1, 1),
    (-1, 1, 1, 1),
    (-1, -1, -1, 1),
    (1, 0, 0, 18),
    (1, 2, 0, 1),
    (1, -2, 0, 1),
)
ETA_FAMILIES = (
    (1, 0, 0, 24),
)


def _factors(families, order):
    return [
        ProductFactor(sign, tau_shift, q_shift, n, multiplicity)
        for n in range(1, order + 1)
        for sign, tau_shift, q_shift, multiplicity in families
    ]


def hilb_factors(order):
    return _factors(HILB_FAMILIES, order)


def kkv_factors(order):
    return _factors(KKV_FAMILIES, order)


def ky_factors(order):
    return _factors(KY_FAMILIES, order)


def eta_factors(order):
    return _factors(ETA_FAMILIES, order)


def _q_free(coefficient, label):
    if set(coefficient.terms) - {0}:
        raise ProductShapeError(f"{label}: unexpected q-dependence")
    return coefficient.coefficient(0)


# --- Hilbert schemes --------------------------------------------------------

@lru_cache(maxsize=None)
def hilb_chi_series(d_max):
    """chi_{-t}(Hilb^d S) for d <= d_max from the Hilbert scheme product."""
    if d_max < 0:
        raise ValueError(f"d_max must be nonnegative, got {d_max}")
    series = expand_product(hilb_factors(d_max), d_max)
    assert_integral(series, 'Hilbert scheme product')
    entries = []
    for d, coefficient in enumerate(series.coefficients):
        centered = _q_free(coefficient, 'Hilbert scheme product')
        if not centered.is_palindromic() or not centered.has_even_support():
            raise ProductShapeError(
                f"t^-{d} chi_-t(Hilb^{d}) is not a palindromic Laurent polynomial in t"
            )
        if centered and (centered.max_exponent > 2 * d):
            raise ProductShapeError(f"chi_-t(Hilb^{d}) has t-degree above {2 * d}")
        entries.append(centered.shift(2 * d))
    logger.debug(f"Hilbert scheme genera computed up to d = {d_max}")
    return HilbGenusTable(tuple(entries))


def euler_hilb(d_max):
    """Euler characteristics e(Hilb^d S), the tau = 1 values of the genera."""
    values = []
    for d, genus in enumerate(hilb_chi_series(d_max)):
        value = genus.evaluate_at_one()
        if value.denominator != 1:
            raise ProductShapeError(f"e(Hilb^{d}) = {value} is not an integer")
        values.append(int(value))
    return tuple(values)


@lru_cache(maxsize=None)
def euler_hilb_oracle(d_max):
    """Coefficients of prod (1 - q^m)^-24, expanded on their own."""
    series = expand_product(eta_factors(d_max), d_max)
    return tuple(int(_q_free(c, 'eta product').coefficient(0)) for c in series.coefficients)


# --- stable pairs and BPS ---------------------------------------------------

def _check_pairs_coefficient(h, coefficient):
    if not coefficient:
        return
    if coefficient.min_exponent < -h or coefficient.max_exponent > h:
        raise ProductShapeError(f"u^{h} coefficient of the stable pairs product has q-degree above {h}")
    if not coefficient.is_palindromic():
        raise ProductShapeError(f"u^{h} coefficient of the stable pairs product is not palindromic")
    for _, value in coefficient.items():
        if value.max_exponent > 2 * h:
            raise ProductShapeError(
                f"u^{h} coefficient of the stable pairs product has tau-degree above {2 * h}"
            )


@lru_cache(maxsize=None)
def ky_product(h_max):
    """The stable pairs product expanded to u^h_max, with its shape asserted."""
    if h_max < 0:
        raise ValueError(f"h_max must be nonnegative, got {h_max}")
    series = expand_product(ky_factors(h_max), h_max)
    assert_integral(series, 'stable pairs product')
    for h, coefficient in enumerate(series.coefficients):
        _check_pairs_coefficient(h, coefficient)
    return series


@lru_cache(maxsize=None)
def kkv_product(h_max):
    """The instanton generating function sum_h n^h_0(t) u^h."""
    if h_max < 0:
        raise ValueError(f"h_max must be nonnegative, got {h_max}")
    series = expand_product(kkv_factors(h_max), h_max)
    assert_integral(series, 'instanton product')
    for coefficient in series.coefficients:
        _q_free(coefficient, 'instanton product')
    return series


@lru_cache(maxsize=None)
def pairs_primitive(h, chi_max):
    """P^h_chi(t) for 1 - h <= chi <= chi_max by dividing the u^h coefficient by the kernel."""
    if h < 0:
        raise ValueError(f"h must be nonnegative, got {h}")
    if chi_max < 1 - h:
        raise ValueError(f"chi_max = {chi_max} is below the first nonzero chi = {1 - h}")
    entries = divide_by_kernel(ky_product(h).coefficient(h), 1 - h, chi_max)
    for chi, value in entries.items():
        if not value.is_palindromic():
            raise ProductShapeError(f"P^{h}_{chi}(t) is not palindromic")
    return PairsTable(h, chi_max, entries)


@lru_cache(maxsize=None)
def bps_refined(h_max):
    """n^h_g(t) for g <= h <= h_max: the stable pairs coefficients in powers of the kernel."""
    series = ky_product(h_max)
    center = quantum_integer(2)
    entries = {}
    for h in range(h_max + 1):
        coefficients = extract_kernel_basis(series.coefficient(h).terms, center)
        if len(coefficients) > h + 1:
            raise ProductShapeError(f"u^{h} coefficient needs kernel powers above {h}")
        for g in range(h + 1):
            value = coefficients[g] if g < len(coefficients) else ZERO
            if not value.is_palindromic():
                raise ProductShapeError(f"n^{h}_{g}(t) is not palindromic")
            entries[(h, g)] = value
    return BpsTable(h_max, entries)


def vw_instanton(h):
    """VW_(0,beta,chi)^1(t) = n^h_0(t), cross-checked against both closed forms."""
    if h < 0:
        raise ValueError(f"h must be nonnegative, got {h}")
    refined = bps_refined(h).get(h, 0)
    generating = _q_free(kkv_product(h).coefficient(h), 'instanton product')
    hilbert = hilb_chi_series(h).centered(h)
    if not (refined == generating == hilbert):
        logger.error(
            f"Instanton mismatch at h = {h}: bps {refined}, product {generating}, Hilbert {hilbert}"
        )
        raise InstantonCrossCheckError(f"instanton cross-check failed at h = {h}")
    return refined


# --- Vafa-Witten invariants and multiple covers -----------------------------

def vw_full(params):
    """sum_{r | m} t^(-r d_r) chi_{-t^r}(Hilb^{d_r} S) / [r]_t^2 with d_r = 1 + (d - 1)/r^2."""
    reduced = {r: params.reduced_points(r) for r in params.divisors()}
    table = hilb_chi_series(max(reduced.values()))
    total = TauRational(ZERO)
    for r, points in reduced.items():
        summand = table[points].substitute_power(r).shift(-2 * r * points)
        total = total + TauRational(summand, quantum_integer(r) ** 2)
    return total


def mcf_sheaf(base, d):
    """VW_(v/d)^d(t) = VW_(v/d)^1(t^d) / [d]_t^2."""
    if d < 1:
        raise ValueError(f"cover degree must be positive, got {d}")
    if not isinstance(base, TauRational):
        base = TauRational(base)
    return base.substitute_power(d) / quantum_integer(d) ** 2


def pairs_full(h, m, chi):
    """P_(beta,chi)(t) for beta^2 = 2h - 2 of divisibility m, summed over d | (m, chi)."""
    if h < 0 or m < 1:
        raise ValueError(f"need h >= 0 and m >= 1, got h = {h}, m = {m}")
    check_square_divisibility(m, h - 1, 'h - 1')
    total = TauRational(ZERO)
    for d in divisors(gcd(m, chi)):
        reduced_genus = 1 + (h - 1) // (d * d)
        reduced_chi = chi // d
        if reduced_chi < 1 - reduced_genus:
            continue
        primitive = pairs_primitive(reduced_genus, reduced_chi).get(reduced_chi)
        sign = -1 if (chi - reduced_chi) % 2 else 1
        total = total + TauRational(primitive.substitute_power(d) * sign, quantum_integer(d))
    return total


def _alternating_sign(chi):
    # (-1)^(chi - 1)
    return 1 if chi % 2 else -1


def wall_crossing_residual(h, chi):
    """P^h_chi - P^h_-chi - (-1)^(chi-1) [chi]_t n^h_0(t); identically zero."""
    if chi < 1:
        raise ValueError(f"chi must be positive, got {chi}")
    table = pairs_primitive(h, chi)
    residual = (
        table.get(chi)
        - table.get(-chi)
        - quantum_integer(chi) * vw_instanton(h) * _alternating_sign(chi)
    )
    return TauRational(residual)


def wall_crossing_full_residual(h, m, chi):
    """The same wall crossing for a class of divisibility m, using the multiple cover sums."""
    if h < 1 or chi < 1:
        raise ValueError(f"need h >= 1 and chi >= 1, got h = {h}, chi = {chi}")
    difference = pairs_full(h, m, chi) - pairs_full(h, m, -chi)
    sheaves = vw_full(VWParams(points=h, divisibility=gcd(m, chi)))
    return difference - sheaves * (quantum_integer(chi) * _alternating_sign(chi))


# --- numerical Gopakumar-Vafa invariants ------------------------------------

def _in_t(polynomial):
    """Re-index a Laurent polynomial in t from tau-exponents to t-exponents."""
    if not polynomial.has_even_support():
        raise KKVIntegralityError(f"KKV integrality violated: {polynomial} is not a polynomial in t")
    return {e // 2: c for e, c in polynomial.items()}


def _signed_integers(coefficients, h, label):
    row = []
    for g in range(h + 1):
        value = coefficients[g] if g < len(coefficients) else Fraction(0)
        value = value * (-1) ** g
        if value.denominator != 1:
            raise KKVIntegralityError(f"KKV integrality violated: {label} n^{h}_{g} = {value}")
        row.append(int(value))
    return row


@lru_cache(maxsize=None)
def kkv_oracle(h_max):
    """Integer n^h_g from the instanton product in y, multiplied out one factor at a time."""
    series = UTruncatedSeries.one(h_max)
    for factor in kkv_factors(h_max):
        series = multiply_truncated(series, expand_factor(factor, h_max))
    entries = {}
    for h in range(h_max + 1):
        in_y = _in_t(_q_free(series.coefficient(h), 'instanton product'))
        coefficients = extract_kernel_basis(in_y, Fraction(-2))
        if len(coefficients) > h + 1:
            raise KKVIntegralityError(f"KKV integrality violated: oracle degree above {h}")
        for g, value in enumerate(_signed_integers(coefficients, h, 'oracle')):
            entries[(h, g)] = value
    return GVTable(h_max, entries, '-2')


def basis_center_candidates():
    return [
        ('-2', TauPolynomial.constant(-2)),
        ('-[2]_t', -quantum_integer(2)),
    ]


def resolve_basis_center(refined, numeric):
    """First candidate c with sum_g (-1)^g n_g (t^-1 + c + t)^g equal to the refined n_0(t)."""
    for label, center in basis_center_candidates():
        basis = T.invert_variable() + center + T
        rebuilt = sum(
            ((basis ** g) * ((-1) ** g * value) for g, value in enumerate(numeric)), ZERO
        )
        if rebuilt == refined:
            logger.info(f"Basis center {label} reproduces the KKV oracle")
            return label, center
        logger.info(f"Basis center {label} does not reproduce the KKV oracle")
    raise KKVIntegralityError("KKV integrality violated: no basis center reproduces the oracle")


@lru_cache(maxsize=None)
def gv_numeric(h_max):
    """Integer n^h_g read off n^h_0(t) in the basis (t^-1 + c + t)^g, c fixed at h = 1."""
    if h_max < 0:
        raise ValueError(f"h_max must be nonnegative, got {h_max}")
    oracle = kkv_oracle(max(h_max, 1))
    label, center = resolve_basis_center(vw_instanton(1), oracle.row(1))
    if not center.is_constant():
        raise KKVIntegralityError(f"KKV integrality violated: basis center {label} is not a scalar")
    scalar = center.coefficient(0)
    entries = {}
    for h in range(h_max + 1):
        coefficients = extract_kernel_basis(_in_t(vw_instanton(h)), scalar)
        if len(coefficients) > h + 1:
            raise KKVIntegralityError(f"KKV integrality violated: degree above {h} at h = {h}")
        for g, value in enumerate(_signed_integers(coefficients, h, 'refined')):
            entries[(h, g)] = value
    return GVTable(h_max, entries, label)


def clear_caches():
    """Forget every memoised table."""
    for cached in (
        hilb_chi_series,
        euler_hilb_oracle,
        ky_product,
        kkv_product,
        pairs_primitive,
        bps_refined,
        kkv_oracle,
        gv_numeric,
    ):
        cached.cache_clear()
