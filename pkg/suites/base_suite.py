"""
Base suite class - template for all verification suites

A suite runs a list of named checks, each comparing a measured value to a
tolerance, and reports them in a single status record.
"""
import logging
import time
from abc import ABC, abstractmethod
from typing import Dict, List, Optional

import numpy as np

from growth.errors import GrowthError

logger = logging.getLogger(__name__)


class BaseSuite(ABC):
    """
    Abstract base class for all verification suites

    Subclasses implement get_suite_name() and run_checks(); run() wraps them
    with timing and error handling and never raises for library errors.
    """

    def __init__(self, seed: int = 0, replicas: Optional[int] = None, jobs: int = 1,
                 progress: bool = False):
        """
        Initialize suite

        Args:
            seed: Base seed for every Monte Carlo check
            replicas: Override for the suite's default sample size
            jobs: Worker processes for replica runs
            progress: Show tqdm progress bars
        """
        self.seed = seed
        self.replicas = replicas
        self.jobs = jobs
        self.progress = progress
        self.checks: List[Dict] = []

    # ==================== ABSTRACT METHODS ====================

    @abstractmethod
    def get_suite_name(self) -> str:
        """Suite identifier, e.g. 'quadrature'."""
        pass

    @abstractmethod
    def run_checks(self) -> None:
        """Run every check, recording each through self.check()."""
        pass

    # ==================== CHECK RECORDING ====================

    def check(self, name: str, measured: float, tolerance: float, expected: float = 0.0,
              kind: str = 'abs', **details) -> bool:
        """
        Record one comparison

        Args:
            name: Check name
            measured: Measured value
            tolerance: Allowed deviation (absolute, relative or in standard errors)
            expected: Reference value
            kind: 'abs', 'rel', 'max' (measured <= tolerance), 'min' (measured >= tolerance)
                  or 'z' (|measured| <= tolerance standard errors)
            **details: Extra fields copied into the record (sample sizes, z-scores)

        Returns:
            Whether the check passed
        """
        measured = float(measured)
        if kind == 'abs':
            passed = abs(measured - expected) <= tolerance
        elif kind == 'rel':
            passed = abs(measured - expected) <= tolerance * max(abs(expected), 1e-300)
        elif kind == 'max':
            passed = measured <= tolerance
        elif kind == 'min':
            passed = measured >= tolerance
        elif kind == 'z':
            passed = abs(measured) <= tolerance
        else:
            raise ValueError(f"unknown check kind {kind!r}")
        passed = bool(passed and np.isfinite(measured))
        record = {
            'name': name,
            'measured': measured,
            'expected': float(expected),
            'tolerance': float(tolerance),
            'kind': kind,
            'passed': passed,
        }
        record.update(details)
        self.checks.append(record)
        log = logger.info if passed else logger.warning
        log("[%s] %s: measured %.6g (expected %.6g, %s tol %.3g) %s", self.get_suite_name(),
            name, measured, expected, kind, tolerance, 'ok' if passed else 'FAILED')
        return passed

    def sample_size(self, default: int) -> int:
        return self.replicas if self.replicas is not None else default

    # ==================== MAIN RUN METHOD ====================

    def run(self) -> Dict:
        """
        Run the suite with error handling

        Returns:
            Dictionary with suite, status ('passed', 'failed' or 'error'),
            checks, error_message and wall_clock
        """
        self.checks = []
        start = time.perf_counter()
        result = {
            'suite': self.get_suite_name(),
            'status': 'pending',
            'checks': self.checks,
            'error_message': '',
            'seed': self.seed,
        }
        try:
            self.run_checks()
            result['status'] = 'passed' if all(c['passed'] for c in self.checks) else 'failed'
        except GrowthError as e:
            logger.error("[%s] %s: %s", self.get_suite_name(), type(e).__name__, e)
            result['status'] = 'error'
            result['error_message'] = f"{type(e).__name__}: {e}"
        result['wall_clock'] = round(time.perf_counter() - start, 3)
        return result
