import pytest

from config import Config
from k3refine import create_app, invariants


class SmallConfig(Config):
    """Smaller tables so command tests stay fast."""
    TESTING = True
    OUTPUT_FORMAT = 'json'
    H_MAX = 3
    CHI_MAX = 4
    D_MAX = 3
    QUANTUM_IDENTITY_BOUND = 6
    VW_SAMPLES = ((1, 1), (1, 2), (5, 2))
    KTH_SAMPLES = ((1, 2), (1, 3))


@pytest.fixture()
def app():
    return create_app(SmallConfig)


@pytest.fixture()
def runner(app):
    return app.test_cli_runner()


@pytest.fixture(autouse=True)
def fresh_tables():
    # Mutation tests swap factor families; never let a memoised table leak between tests.
    invariants.clear_caches()
    yield
    invariants.clear_caches()
