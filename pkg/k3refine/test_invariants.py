from fractions import Fraction

import pytest

from k3refine import invariants
from k3refine.errors import (
    DivisibilityError,
    InstantonCrossCheckError,
    KKVIntegralityError,
    ProductShapeError,
)
from k3refine.laurent import ONE, ZERO, TauPolynomial, TauRational, quantum_integer
from k3refine.models import VWParams
from k3refine.series import QLaurent

EULER_HILB = (1, 24, 324, 3200, 25650, 176256, 1073720, 5930496, 30178575, 143184000, 639249300)

# 2t^-1 + 20 + 2t, the genus one instanton contribution
N_1_0 = TauPolynomial.from_t({-1: 2, 0: 20, 1: 2})
Q2 = quantum_integer(2)


# ============================================================================
# HILBERT SCHEMES
# ============================================================================

def test_hilbert_genera_low_degree():
    table = invariants.hilb_chi_series(2)
    assert table[0] == ONE
    assert table[1] == TauPolynomial.from_t({0: 2, 1: 20, 2: 2})
    assert table[2] == TauPolynomial.from_t({0: 3, 1: 42, 2: 234, 3: 42, 4: 3})
    assert table.d_max == 2


def test_hilbert_genera_shape():
    table = invariants.hilb_chi_series(6)
    for d, genus in enumerate(table):
        assert genus.min_exponent == 0
        assert genus.max_exponent == 4 * d
        assert genus.has_even_support()
        assert table.centered(d).is_palindromic()


def test_euler_numbers_match_eta_product():
    assert invariants.euler_hilb(10) == EULER_HILB
    assert invariants.euler_hilb_oracle(10) == EULER_HILB


def test_negative_order_is_rejected():
    with pytest.raises(ValueError):
        invariants.hilb_chi_series(-1)


def test_shape_violation_in_hilbert_product(monkeypatch):
    monkeypatch.setattr(invariants, 'HILB_FAMILIES', ((1, 0, 0, 20), (1, 4, 0, 2), (1, -2, 0, 2)))
    with pytest.raises(ProductShapeError):
        invariants.hilb_chi_series(2)


# ============================================================================
# STABLE PAIRS
# ============================================================================

def test_stable_pairs_product_shape():
    series = invariants.ky_product(5)
    assert series.coefficient(0) == QLaurent.constant(ONE)
    for h in range(6):
        coefficient = series.coefficient(h)
        assert coefficient.is_palindromic()
        assert coefficient.min_exponent >= -h
        assert coefficient.max_exponent <= h


def test_genus_zero_pairs_are_alternating_quantum_integers():
    table = invariants.pairs_primitive(0, 15)
    for chi in range(1, 16):
        assert table.get(chi) == quantum_integer(chi) * (-1) ** (chi - 1)
    assert table.get(0) == ZERO
    assert table.get(-4) == ZERO


def test_genus_one_pairs():
    table = invariants.pairs_primitive(1, 2)
    assert table.get(0) == -Q2
    assert table.get(1) == N_1_0
    assert table.get(2) == -Q2 * N_1_0
    assert table.get(-1) == ZERO
    with pytest.raises(KeyError):
        table.get(3)


def test_pairs_are_palindromic():
    for h in range(5):
        table = invariants.pairs_primitive(h, 6)
        assert all(value.is_palindromic() for value in table.entries.values())


def test_pairs_window_below_support_is_rejected():
    with pytest.raises(ValueError):
        invariants.pairs_primitive(2, -2)


# ============================================================================
# BPS INVARIANTS
# ============================================================================

def test_low_genus_bps_invariants():
    table = invariants.bps_refined(1)
    assert table.get(0, 0) == ONE
    assert table.get(1, 0) == N_1_0
    assert table.get(1, 1) == -Q2
    assert table.get(1, 2) == ZERO


@pytest.mark.parametrize('h', range(7))
def test_top_genus_bps_at_tau_one(h):
    table = invariants.bps_refined(h)
    assert table.get(h, h).evaluate_at_one() == (-1) ** h * (h + 1)


def test_instanton_contributions():
    assert invariants.vw_instanton(0) == ONE
    assert invariants.vw_instanton(1) == N_1_0
    assert invariants.vw_instanton(2) == TauPolynomial.from_t({-2: 3, -1: 42, 0: 234, 1: 42, 2: 3})


def test_instanton_cross_check_detects_a_mutated_product(monkeypatch):
    monkeypatch.setattr(invariants, 'KKV_FAMILIES', ((1, 0, 0, 21), (1, 2, 0, 2), (1, -2, 0, 2)))
    with pytest.raises(InstantonCrossCheckError, match='instanton cross-check failed'):
        invariants.vw_instanton(1)


def test_instanton_generating_function_matches_hilbert_genera():
    series = invariants.kkv_product(6)
    table = invariants.hilb_chi_series(6)
    for h in range(7):
        assert series.coefficient(h).coefficient(0) == table.centered(h)


# ============================================================================
# VAFA-WITTEN INVARIANTS AND MULTIPLE COVERS
# ============================================================================

def test_vw_primitive_is_the_centered_genus():
    value = invariants.vw_full(VWParams(points=1))
    assert value.is_polynomial
    assert value == N_1_0


def test_vw_divisibility_two():
    value = invariants.vw_full(VWParams(points=1, divisibility=2))
    expected = TauRational(N_1_0) + TauRational(N_1_0.substitute_power(2), Q2 ** 2)
    assert value == expected
    assert value.evaluate_at_one() == 30


@pytest.mark.parametrize('points, divisibility, expected', [
    (2, 1, 324),
    (5, 2, 176256 + Fraction(324, 4)),
    (10, 3, 639249300 + Fraction(324, 9)),
])
def test_vw_at_tau_one(points, divisibility, expected):
    value = invariants.vw_full(VWParams(points, divisibility))
    assert value.evaluate_at_one() == expected
    assert value.invert_variable() == value


def test_vw_rejects_incompatible_divisibility():
    with pytest.raises(DivisibilityError, match='divisibility incompatible with square'):
        VWParams(points=2, divisibility=2)


def test_sheaf_multiple_cover():
    base = invariants.vw_instanton(1)
    assert invariants.mcf_sheaf(base, 1) == base
    assert invariants.mcf_sheaf(base, 2) == TauRational(N_1_0.substitute_power(2), Q2 ** 2)
    with pytest.raises(ValueError):
        invariants.mcf_sheaf(base, 0)


@pytest.mark.parametrize('points, divisibility', [(1, 1), (1, 2), (5, 2), (10, 3)])
def test_vw_is_a_sum_of_sheaf_covers(points, divisibility):
    params = VWParams(points, divisibility)
    assembled = sum(
        (invariants.mcf_sheaf(invariants.vw_instanton(params.reduced_points(r)), r)
         for r in params.divisors()),
        ZERO,
    )
    assert invariants.vw_full(params) == assembled


def test_pairs_with_divisibility_one_are_primitive():
    table = invariants.pairs_primitive(3, 5)
    for chi in range(-2, 6):
        assert invariants.pairs_full(3, 1, chi) == table.get(chi)


def test_pairs_with_divisibility_two():
    expected = (
        TauRational(invariants.pairs_primitive(5, 2).get(2))
        - TauRational(invariants.pairs_primitive(2, 1).get(1).substitute_power(2), Q2)
    )
    assert invariants.pairs_full(5, 2, 2) == expected
    assert invariants.pairs_full(5, 2, 3) == invariants.pairs_primitive(5, 3).get(3)


def test_pairs_reject_incompatible_divisibility():
    with pytest.raises(DivisibilityError):
        invariants.pairs_full(2, 2, 1)


# ============================================================================
# WALL CROSSING
# ============================================================================

@pytest.mark.parametrize('h', range(5))
def test_primitive_wall_crossing_vanishes(h):
    for chi in range(1, 7):
        assert invariants.wall_crossing_residual(h, chi) == ZERO


def test_wall_crossing_examples():
    assert invariants.wall_crossing_residual(0, 3) == ZERO
    assert invariants.wall_crossing_residual(1, 1) == ZERO
    with pytest.raises(ValueError):
        invariants.wall_crossing_residual(1, 0)


@pytest.mark.parametrize('h, m', [(1, 2), (5, 2), (1, 3)])
def test_non_primitive_wall_crossing_vanishes(h, m):
    for chi in range(1, 5):
        assert invariants.wall_crossing_full_residual(h, m, chi) == ZERO


# ============================================================================
# NUMERICAL GOPAKUMAR-VAFA INVARIANTS
# ============================================================================

def test_kkv_oracle_low_genus():
    oracle = invariants.kkv_oracle(2)
    assert oracle.row(0) == [1]
    assert oracle.row(1) == [24, -2]
    assert oracle.row(2) == [324, -54, 3]


def test_numeric_invariants_use_center_minus_two():
    table = invariants.gv_numeric(2)
    assert table.center_label == '-2'
    assert table.get(0, 0) == 1
    assert table.row(1) == [24, -2]
    assert table.row(2) == [324, -54, 3]


def test_genus_zero_numeric_invariants_are_euler_numbers():
    table = invariants.gv_numeric(8)
    assert [table.get(h, 0) for h in range(9)] == list(EULER_HILB[:9])


def test_basis_center_resolution():
    label, center = invariants.resolve_basis_center(N_1_0, [24, -2])
    assert label == '-2'
    assert center == TauPolynomial.constant(-2)
    with pytest.raises(KKVIntegralityError):
        invariants.resolve_basis_center(N_1_0, [24, -3])


def test_printed_center_alone_fails_integrality(monkeypatch):
    monkeypatch.setattr(invariants, 'basis_center_candidates', lambda: [('-[2]_t', -Q2)])
    with pytest.raises(KKVIntegralityError, match='KKV integrality violated'):
        invariants.gv_numeric(1)


def test_clear_caches_recomputes_tables():
    first = invariants.hilb_chi_series(3)
    invariants.clear_caches()
    assert invariants.hilb_chi_series.cache_info().currsize == 0
    assert invariants.hilb_chi_series(3) == first
