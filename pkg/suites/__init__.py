"""Verification suites for the wall growth toolkit"""

from .base_suite import BaseSuite
from .quadrature_suite import QuadratureSuite
from .measures_suite import MeasuresSuite
from .dynamics_suite import DynamicsSuite
from .kernel_mc_suite import KernelMonteCarloSuite
from .bulk_suite import BulkSuite
from .wall_suite import WallSuite
from .pearcey_suite import PearceySuite

SUITE_CLASSES = {
    'quadrature': QuadratureSuite,
    'measures': MeasuresSuite,
    'dynamics': DynamicsSuite,
    'kernel-mc': KernelMonteCarloSuite,
    'bulk': BulkSuite,
    'wall': WallSuite,
    'pearcey': PearceySuite,
}

__all__ = [
    'BaseSuite',
    'QuadratureSuite',
    'MeasuresSuite',
    'DynamicsSuite',
    'KernelMonteCarloSuite',
    'BulkSuite',
    'WallSuite',
    'PearceySuite',
    'SUITE_CLASSES',
]
