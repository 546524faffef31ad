from k3refine import invariants
from k3refine.identities import CHECK_NAMES, check_quantum_integers, identity_suite
from k3refine.models import VWParams

SAMPLES = [VWParams(1, 1), VWParams(1, 2), VWParams(2, 1), VWParams(5, 2)]
KTH_SAMPLES = ((1, 2), (1, 3))


def small_suite():
    return identity_suite(3, 4, SAMPLES, kth_samples=KTH_SAMPLES, quantum_bound=6)


# ============================================================================
# PASSING SUITE
# ============================================================================

def test_suite_passes_on_small_tables():
    report = small_suite()
    assert report.passed, [check.to_dict() for check in report.failed_checks()]
    assert [check.name for check in report.checks] == list(CHECK_NAMES)
    assert report.basis_center == '-2'


def test_instance_counts():
    report = small_suite()
    assert report.check('quantum integer identity').instances == 36
    assert report.check('hilbert genus vs instanton series').instances == 4
    assert report.check('primitive wall crossing').instances == 4 * 4
    assert report.check('non-primitive wall crossing').instances == 2 * 4
    assert report.check('sheaf multiple cover formula').instances == len(SAMPLES)


def test_degenerate_suite_passes():
    report = identity_suite(0, 1, [VWParams(1, 1)], kth_samples=KTH_SAMPLES, quantum_bound=2)
    assert report.passed
    assert report.check('non-primitive wall crossing').instances == 0
    assert report.check('hilbert genus vs instanton series').instances == 1


def test_samples_may_be_given_as_pairs():
    report = identity_suite(1, 2, [(1, 2)], quantum_bound=2)
    assert report.passed
    assert report.check('tau inversion symmetry').instances == 1


def test_report_serialisation():
    data = small_suite().to_dict()
    assert data['passed'] is True
    assert data['basis_center'] == '-2'
    assert data['identities'][0] == {
        'name': 'quantum integer identity', 'instances': 36, 'passed': True, 'detail': '',
    }


def test_quantum_identity_check_counts_all_pairs():
    instances, failures = check_quantum_integers(4)
    assert instances == 16
    assert failures == []


# ============================================================================
# MUTATION TESTS
# ============================================================================

def test_mutated_hilbert_product_fails_the_cross_link(monkeypatch):
    monkeypatch.setattr(invariants, 'HILB_FAMILIES', ((1, 0, 0, 21), (1, 2, 0, 2), (1, -2, 0, 2)))
    invariants.clear_caches()
    report = small_suite()
    assert not report.passed
    check = report.check('hilbert genus vs instanton series')
    assert not check.passed
    assert 'instanton cross-check failed' in check.detail


def test_wrong_exponent_in_hilbert_product_is_reported_not_raised(monkeypatch):
    monkeypatch.setattr(invariants, 'HILB_FAMILIES', ((1, 0, 0, 20), (1, 4, 0, 2), (1, -2, 0, 2)))
    invariants.clear_caches()
    report = small_suite()
    check = report.check('hilbert genus vs instanton series')
    assert not check.passed
    assert 'not a palindromic' in check.detail


def test_mutated_stable_pairs_product_fails(monkeypatch):
    families = tuple(
        (1, 0, 0, 19) if family == (1, 0, 0, 18) else family for family in invariants.KY_FAMILIES
    )
    monkeypatch.setattr(invariants, 'KY_FAMILIES', families)
    invariants.clear_caches()
    report = small_suite()
    assert not report.passed
    assert not report.check('hilbert genus vs instanton series').passed


def test_mutated_instanton_product_fails(monkeypatch):
    monkeypatch.setattr(invariants, 'KKV_FAMILIES', ((1, 0, 0, 20), (1, 2, 0, 3), (1, -2, 0, 2)))
    invariants.clear_caches()
    report = small_suite()
    assert not report.passed
    assert not report.check('hilbert genus vs instanton series').passed
    assert not report.check('numerical gopakumar-vafa').passed


def test_mutated_eta_oracle_fails_specializations(monkeypatch):
    monkeypatch.setattr(invariants, 'ETA_FAMILIES', ((1, 0, 0, 23),))
    invariants.clear_caches()
    report = small_suite()
    assert not report.passed
    assert not report.check('t=1 specializations').passed
    assert report.check('hilbert genus vs instanton series').passed
