"""
Configuration settings for the wall growth toolkit
"""
import os
from dotenv import load_dotenv

# Load environment variables
load_dotenv()


def _flag(name: str, default: str = 'false') -> bool:
    return os.getenv(name, default).strip().lower() in ('1', 'true', 'yes', 'on')


# Quadrature
QUAD_NODES = int(os.getenv('QUAD_NODES', '256'))

# Kernel evaluation
KERNEL_METHOD = os.getenv('KERNEL_METHOD', 'residue')
CONTOUR_RADIUS = float(os.getenv('CONTOUR_RADIUS', '1.5'))
U_NODES = int(os.getenv('U_NODES', '512'))
X_NODES = int(os.getenv('X_NODES', '256'))
IMAG_TOLERANCE = float(os.getenv('IMAG_TOLERANCE', '1e-9'))

# Dynamics
OBSERVABLE_MARGIN = int(os.getenv('OBSERVABLE_MARGIN', '0'))
STATE_CAP = int(os.getenv('STATE_CAP', '20000'))
MASS_DEFECT_TOL = float(os.getenv('MASS_DEFECT_TOL', '1e-8'))
DEBUG_INVARIANTS = _flag('DEBUG_INVARIANTS')

# Symmetric Pearcey
PEARCEY_NODES = int(os.getenv('PEARCEY_NODES', '400'))
PEARCEY_CUTOFF = float(os.getenv('PEARCEY_CUTOFF', '6.0'))

# Runtime
DEFAULT_JOBS = int(os.getenv('WALLGROWTH_JOBS', '1'))
LOG_LEVEL = os.getenv('LOG_LEVEL', 'INFO').upper()
OUTPUT_DIR = os.getenv('OUTPUT_DIR', 'output')

# Output provenance
FORMAT_VERSION = 1
RNG_NAME = 'PCG64'
LIBRARY_VERSION = '0.3.0'

# Columns of the per-replica row export
ROW_COLUMNS = [
    'replica',
    'seed',
    'time',
    'row',
    'positions',
]

# Columns of the shape grid export
GRID_COLUMNS = [
    't',
    'd',
    'l',
    'region',
    'h',
    'density',
    'q1',
    'q2',
    'status',
    'error_message'
]

# Verification suite configuration
SUITE_CONFIG = {
    'quadrature': {
        'name': 'Quadrature and polynomial identities',
        'enabled': True,
        'runtime': 'seconds'
    },
    'measures': {
        'name': 'Exact finite-level measures',
        'enabled': True,
        'runtime': 'seconds'
    },
    'dynamics': {
        'name': 'Growth dynamics and transition matrices',
        'enabled': True,
        'runtime': 'minutes'
    },
    'kernel-mc': {
        'name': 'Kernel against Monte Carlo',
        'enabled': True,
        'runtime': 'minutes'
    },
    'bulk': {
        'name': 'Bulk and frozen limits',
        'enabled': True,
        'runtime': 'minutes'
    },
    'wall': {
        'name': 'Discrete Jacobi limit at the wall',
        'enabled': True,
        'runtime': 'minutes'
    },
    'pearcey': {
        'name': 'Symmetric Pearcey limit',
        'enabled': True,
        'runtime': 'minutes'
    }
}
