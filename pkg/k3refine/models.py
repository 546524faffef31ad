from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Optional

from .errors import DivisibilityError
from .laurent import ZERO, TauPolynomial, TauRational

OUTPUT_FORMATS = ('json', 'csv', 'pretty')
EVALUATION_POINTS = ('tau=1',)


def divisors(n):
    """Positive divisors of n (n >= 1) in ascending order."""
    if n < 1:
        raise ValueError(f"divisors needs a positive integer, got {n}")
    return [r for r in range(1, n + 1) if n % r == 0]


def check_square_divisibility(divisibility, value, what):
    """Every divisor r of the divisibility must have r^2 dividing value."""
    for r in divisors(divisibility):
        if value % (r * r):
            raise DivisibilityError(r, value, what)


@dataclass(frozen=True)
class VWParams:
    """A Mukai vector described by its Hilbert index d (v^2 = 2 - 2d) and divisibility m."""

    points: int
    divisibility: int = 1

    def __post_init__(self):
        if self.points < 1:
            raise ValueError(f"points must be positive, got {self.points}")
        if self.divisibility < 1:
            raise ValueError(f"divisibility must be positive, got {self.divisibility}")
        check_square_divisibility(self.divisibility, self.points - 1, 'd - 1')

    def divisors(self):
        return divisors(self.divisibility)

    def reduced_points(self, r):
        # d_r = 1 + (d - 1) / r^2, the Hilbert index of the r-th summand
        return 1 + (self.points - 1) // (r * r)


@dataclass(frozen=True)
class HilbGenusTable:
    """chi_{-t}(Hilb^d S) for d = 0..d_max, as polynomials in t (even tau-exponents 0..4d)."""

    entries: tuple

    @property
    def d_max(self):
        return len(self.entries) - 1

    def __getitem__(self, d):
        return self.entries[d]

    def __len__(self):
        return len(self.entries)

    def centered(self, d):
        """t^-d chi_{-t}(Hilb^d S), the palindromic normalisation."""
        return self.entries[d].shift(-2 * d)


@dataclass(frozen=True)
class PairsTable:
    """Primitive refined stable pair invariants P^h_chi(t) for 1 - h <= chi <= chi_max."""

    genus: int
    chi_max: int
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, 'entries', MappingProxyType(dict(self.entries)))

    def get(self, chi):
        if chi < 1 - self.genus:
            return ZERO
        if chi > self.chi_max:
            raise KeyError(f"chi = {chi} is beyond the computed window (chi_max = {self.chi_max})")
        return self.entries[chi]


@dataclass(frozen=True)
class BpsTable:
    """Refined BPS polynomials n^h_g(t) for 0 <= g <= h <= h_max."""

    h_max: int
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, 'entries', MappingProxyType(dict(self.entries)))

    def get(self, h, g):
        if g < 0 or g > h:
            return ZERO
        return self.entries[(h, g)]

    def row(self, h):
        return [self.get(h, g) for g in range(h + 1)]


@dataclass(frozen=True)
class GVTable:
    """Integer Gopakumar-Vafa invariants n^h_g and the basis centre used to extract them."""

    h_max: int
    entries: dict = field(default_factory=dict)
    center_label: str = '-2'

    def __post_init__(self):
        object.__setattr__(self, 'entries', MappingProxyType(dict(self.entries)))

    def get(self, h, g):
        if g < 0 or g > h:
            return 0
        return self.entries[(h, g)]

    def row(self, h):
        return [self.get(h, g) for g in range(h + 1)]


@dataclass(frozen=True)
class RunConfig:
    h_max: int = 10
    chi_max: int = 12
    d_max: int = 10
    output_format: str = 'pretty'
    evaluate_at: Optional[str] = None

    def __post_init__(self):
        if self.h_max < 0 or self.d_max < 0:
            raise ValueError("h_max and d_max must be nonnegative")
        if self.output_format not in OUTPUT_FORMATS:
            raise ValueError(f"Unknown output format '{self.output_format}'")
        if self.evaluate_at is not None and self.evaluate_at not in EVALUATION_POINTS:
            raise ValueError(f"Unsupported evaluation point '{self.evaluate_at}'")

    @classmethod
    def from_app_config(cls, config, **overrides):
        values = {
            'h_max': config['H_MAX'],
            'chi_max': config['CHI_MAX'],
            'd_max': config['D_MAX'],
            'output_format': config['OUTPUT_FORMAT'],
            'evaluate_at': None,
        }
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls(**values)


def record_flags(value):
    """Recompute the palindromic/polynomial/integral flags from the value itself."""
    if isinstance(value, TauPolynomial):
        return {
            'palindromic': value.is_palindromic(),
            'polynomial': True,
            'integral': value.is_integral(),
        }
    if isinstance(value, TauRational):
        return {
            'palindromic': value.is_palindromic(),
            'polynomial': value.is_polynomial,
            'integral': value.is_integral(),
        }
    value = Fraction(value)
    return {'palindromic': True, 'polynomial': True, 'integral': value.denominator == 1}


@dataclass(frozen=True)
class InvariantRecord:
    invariant: str
    params: dict
    result: object
    flags: dict

    @classmethod
    def from_value(cls, invariant, params, value):
        return cls(invariant, dict(params), value, record_flags(value))

    def serialized_result(self):
        if isinstance(self.result, (TauPolynomial, TauRational)):
            return self.result.to_json()
        return str(Fraction(self.result))

    def result_tokens(self):
        if isinstance(self.result, (TauPolynomial, TauRational)):
            return self.result.to_tokens()
        return str(Fraction(self.result))

    def to_dict(self):
        return {
            'invariant': self.invariant,
            'params': dict(self.params),
            'result': self.serialized_result(),
            'flags': dict(self.flags),
        }


@dataclass
class IdentityCheck:
    name: str
    instances: int = 0
    passed: bool = True
    detail: str = ''

    def to_dict(self):
        return {
            'name': self.name,
            'instances': self.instances,
            'passed': self.passed,
            'detail': self.detail,
        }


@dataclass
class VerificationReport:
    checks: list = field(default_factory=list)
    basis_center: Optional[str] = None

    @property
    def passed(self):
        return all(check.passed for check in self.checks)

    def check(self, name):
        for entry in self.checks:
            if entry.name == name:
                return entry
        raise KeyError(name)

    def failed_checks(self):
        return [check for check in self.checks if not check.passed]

    def to_dict(self):
        return {
            'passed': self.passed,
            'basis_center': self.basis_center,
            'identities': [check.to_dict() for check in self.checks],
        }
