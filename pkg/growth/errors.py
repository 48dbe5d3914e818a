"""
Exception hierarchy for the growth library
"""


class GrowthError(Exception):
    """Root of every error raised by the library."""


class DomainError(GrowthError, ValueError):
    """An argument lies outside the domain of an operation."""


class StateCapError(GrowthError):
    """A truncated state space would exceed the configured cap."""


class MassDefectError(GrowthError):
    """Probability mass escaped a truncated support beyond tolerance."""

    def __init__(self, message: str, defect: float):
        super().__init__(message)
        self.defect = defect


class ForbiddenTransitionError(GrowthError):
    """A sequential-update denominator vanished."""


class ContourError(GrowthError):
    """The kernel contour is invalid or the result failed its realness check."""


class DegenerateSaddleError(GrowthError):
    """The saddle-point cubic sits on its discriminant boundary."""


class ConvergenceError(GrowthError):
    """A truncated integral did not converge."""


class DuplicatePointError(GrowthError, ValueError):
    """Correlation functions need pairwise distinct points."""
