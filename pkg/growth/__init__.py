"""Numerical library for random surface growth with a reflecting wall"""

from .errors import (
    ContourError,
    ConvergenceError,
    DegenerateSaddleError,
    DomainError,
    DuplicatePointError,
    ForbiddenTransitionError,
    GrowthError,
    MassDefectError,
    StateCapError,
)
from .characters import CharacterParams
from .paths import LevelIndex, ParticleConfig, PathConfig, packed_config
from .dynamics import simulate, simulate_many
from .kernel import ContourSpec, KernelPoint, correlation, eval_K
from .asymptotics import frozen_boundary, limit_shape_h, saddle
from .pearcey import PearceyPoint, symmetric_pearcey_K

__all__ = [
    'GrowthError',
    'DomainError',
    'StateCapError',
    'MassDefectError',
    'ForbiddenTransitionError',
    'ContourError',
    'DegenerateSaddleError',
    'ConvergenceError',
    'DuplicatePointError',
    'CharacterParams',
    'LevelIndex',
    'ParticleConfig',
    'PathConfig',
    'packed_config',
    'simulate',
    'simulate_many',
    'ContourSpec',
    'KernelPoint',
    'correlation',
    'eval_K',
    'saddle',
    'frozen_boundary',
    'limit_shape_h',
    'PearceyPoint',
    'symmetric_pearcey_K',
]
