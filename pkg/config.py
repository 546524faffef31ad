import os

BASE_DIR = os.path.abspath(os.path.dirname(__file__))

# Configuration class for the k3refine application
# Table sizes, the default output format and the sample sets used by the verify command.
# Only the output format can be overridden from the environment; everything else is a flag.
class Config:
    H_MAX = 10
    CHI_MAX = 12
    D_MAX = 10
    OUTPUT_FORMAT = os.environ.get('K3REFINE_FORMAT') or 'pretty'
    LOG_LEVEL = 'WARNING'
    QUANTUM_IDENTITY_BOUND = 20
    # (d, m): Hilbert index and divisibility of the Mukai vector
    VW_SAMPLES = ((1, 1), (1, 2), (2, 1), (5, 2), (10, 3))
    # (h, m): curve class genus and divisibility for the non-primitive wall crossing
    KTH_SAMPLES = ((1, 2), (5, 2), (9, 2), (1, 3), (10, 3))
