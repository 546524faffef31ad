"""Every identity connecting the invariant families, gathered into one pass/fail report.

A check never raises: domain and arithmetic errors are recorded as a failed entry carrying the
error message, so a broken product definition shows up as a named failure in the report.
"""
import logging
from fractions import Fraction

from . import invariants
from .errors import K3RefineError
from .laurent import ZERO, quantum_integer
from .models import IdentityCheck, VerificationReport, VWParams
from .series import reconstruct_from_basis

logger = logging.getLogger(__name__)

CHECK_NAMES = (
    'quantum integer identity',
    'hilbert genus vs instanton series',
    'bps basis reconstruction',
    'h=0 stable pairs closed form',
    'primitive wall crossing',
    'divisibility-one pairs',
    'non-primitive wall crossing',
    'sheaf multiple cover formula',
    'tau inversion symmetry',
    't=1 specializations',
    'integrality',
    'numerical gopakumar-vafa',
)


def _summary(failures):
    if not failures:
        return ''
    if len(failures) == 1:
        return failures[0]
    return f"{failures[0]} (and {len(failures) - 1} more)"


def _run_check(name, check):
    entry = IdentityCheck(name)
    try:
        entry.instances, failures = check()
    except (K3RefineError, ValueError, ArithmeticError, KeyError) as error:
        entry.passed = False
        entry.detail = f"{type(error).__name__}: {error}"
    else:
        entry.passed = not failures
        entry.detail = _summary(failures)

    if entry.passed:
        logger.info(f"Identity '{name}' passed on {entry.instances} instances")
    else:
        logger.warning(f"Identity '{name}' failed: {entry.detail}")
    return entry


def check_quantum_integers(bound):
    """[chi]_{t^d} = [d chi]_t / [d]_t for 1 <= d, chi <= bound."""
    instances, failures = 0, []
    for d in range(1, bound + 1):
        denominator = quantum_integer(d)
        for chi in range(1, bound + 1):
            instances += 1
            quotient = quantum_integer(d * chi).exact_quotient(denominator)
            if quotient != quantum_integer(chi).substitute_power(d):
                failures.append(f"d = {d}, chi = {chi}")
    return instances, failures


def check_instanton_cross_link(h_max):
    instances, failures = 0, []
    for h in range(h_max + 1):
        instances += 1
        try:
            invariants.vw_instanton(h)
        except K3RefineError as error:
            failures.append(str(error))
    return instances, failures


def check_bps_reconstruction(h_max):
    series = invariants.ky_product(h_max)
    table = invariants.bps_refined(h_max)
    center = quantum_integer(2)
    instances, failures = 0, []
    for h in range(h_max + 1):
        instances += 1
        rebuilt = reconstruct_from_basis(table.row(h), center)
        if rebuilt != series.coefficient(h).terms:
            failures.append(f"u^{h} coefficient is not reproduced")
        if any(not value.is_palindromic() for value in table.row(h)):
            failures.append(f"n^{h}_g is not palindromic")
    return instances, failures


def check_h0_pairs(chi_max):
    chi_max = max(chi_max, 1)
    table = invariants.pairs_primitive(0, chi_max)
    instances, failures = 0, []
    for chi in range(1, chi_max + 1):
        instances += 1
        expected = quantum_integer(chi) * (1 if chi % 2 else -1)
        if table.get(chi) != expected:
            failures.append(f"P^0_{chi} = {table.get(chi)}")
    return instances, failures


def check_primitive_wall_crossing(h_max, chi_max):
    instances, failures = 0, []
    for h in range(h_max + 1):
        for chi in range(1, chi_max + 1):
            instances += 1
            residual = invariants.wall_crossing_residual(h, chi)
            if residual:
                failures.append(f"h = {h}, chi = {chi}: residual {residual}")
    return instances, failures


def check_divisibility_one_pairs(h_max, chi_max):
    instances, failures = 0, []
    for h in range(h_max + 1):
        if chi_max < 1 - h:
            continue
        table = invariants.pairs_primitive(h, chi_max)
        for chi in range(1 - h, chi_max + 1):
            instances += 1
            if invariants.pairs_full(h, 1, chi) != table.get(chi):
                failures.append(f"h = {h}, chi = {chi}")
    return instances, failures


def check_full_wall_crossing(h_max, chi_max, samples):
    instances, failures = 0, []
    for h, m in samples:
        if h < 1 or h > h_max:
            continue
        for chi in range(1, chi_max + 1):
            instances += 1
            residual = invariants.wall_crossing_full_residual(h, m, chi)
            if residual:
                failures.append(f"h = {h}, m = {m}, chi = {chi}: residual {residual}")
    return instances, failures


def check_sheaf_multiple_cover(samples):
    instances, failures = 0, []
    for params in samples:
        instances += 1
        assembled = sum(
            (invariants.mcf_sheaf(invariants.vw_instanton(params.reduced_points(r)), r)
             for r in params.divisors()),
            ZERO,
        )
        if invariants.vw_full(params) != assembled:
            failures.append(f"d = {params.points}, m = {params.divisibility}")
    return instances, failures


def check_inversion_symmetry(samples):
    instances, failures = 0, []
    for params in samples:
        instances += 1
        value = invariants.vw_full(params)
        if value.invert_variable() != value:
            failures.append(f"d = {params.points}, m = {params.divisibility}")
    return instances, failures


def check_specializations(h_max, samples):
    d_max = max([h_max] + [params.points for params in samples])
    euler = invariants.euler_hilb(d_max)
    instances, failures = 1, []
    if euler != invariants.euler_hilb_oracle(d_max):
        failures.append("e(Hilb^d) differs from the coefficients of prod (1 - q^m)^-24")

    for params in samples:
        instances += 1
        expected = sum(
            (Fraction(euler[params.reduced_points(r)], r * r) for r in params.divisors()),
            Fraction(0),
        )
        value = invariants.vw_full(params).evaluate_at_one()
        if value != expected:
            failures.append(
                f"vw(d = {params.points}, m = {params.divisibility}) at tau = 1 is {value}, "
                f"expected {expected}"
            )

    table = invariants.bps_refined(h_max)
    for h in range(h_max + 1):
        instances += 1
        value = table.get(h, h).evaluate_at_one()
        if value != (-1) ** h * (h + 1):
            failures.append(f"n^{h}_{h} at tau = 1 is {value}")
    return instances, failures


def check_integrality(h_max, chi_max):
    instances, failures = 0, []
    for d, genus in enumerate(invariants.hilb_chi_series(h_max)):
        instances += 1
        if not genus.is_integral():
            failures.append(f"chi_-t(Hilb^{d})")
    table = invariants.bps_refined(h_max)
    for (h, g), value in sorted(table.entries.items()):
        instances += 1
        if not value.is_integral():
            failures.append(f"n^{h}_{g}(t)")
    for h in range(h_max + 1):
        if chi_max < 1 - h:
            continue
        for chi, value in sorted(invariants.pairs_primitive(h, chi_max).entries.items()):
            instances += 1
            if not value.is_integral():
                failures.append(f"P^{h}_{chi}(t)")
    return instances, failures


def identity_suite(h_max, chi_max, vw_samples, kth_samples=(), quantum_bound=20):
    """Run every identity and collect the outcome in a VerificationReport."""
    vw_samples = [
        params if isinstance(params, VWParams) else VWParams(*params) for params in vw_samples
    ]
    report = VerificationReport()

    def numerical_gopakumar_vafa():
        table = invariants.gv_numeric(h_max)
        report.basis_center = table.center_label
        oracle = invariants.kkv_oracle(max(h_max, 1))
        euler = invariants.euler_hilb(h_max)
        instances, failures = 0, []
        for h in range(h_max + 1):
            instances += 1
            if table.row(h) != oracle.row(h):
                failures.append(f"h = {h}: {table.row(h)} differs from the oracle {oracle.row(h)}")
            if table.get(h, 0) != euler[h]:
                failures.append(f"n^{h}_0 = {table.get(h, 0)} differs from e(Hilb^{h})")
        return instances, failures

    checks = (
        lambda: check_quantum_integers(quantum_bound),
        lambda: check_instanton_cross_link(h_max),
        lambda: check_bps_reconstruction(h_max),
        lambda: check_h0_pairs(chi_max),
        lambda: check_primitive_wall_crossing(h_max, chi_max),
        lambda: check_divisibility_one_pairs(h_max, chi_max),
        lambda: check_full_wall_crossing(h_max, chi_max, kth_samples),
        lambda: check_sheaf_multiple_cover(vw_samples),
        lambda: check_inversion_symmetry(vw_samples),
        lambda: check_specializations(h_max, vw_samples),
        lambda: check_integrality(h_max, chi_max),
        numerical_gopakumar_vafa,
    )
    for name, check in zip(CHECK_NAMES, checks):
        report.checks.append(_run_check(name, check))

    logger.info(
        f"Identity suite finished: {len(report.checks) - len(report.failed_checks())} of "
        f"{len(report.checks)} checks passed"
    )
    return report

