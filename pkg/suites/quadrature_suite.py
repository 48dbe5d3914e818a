"""
Quadrature and polynomial identity checks
"""
import numpy as np

from growth.chebyshev_jacobi import (
    MINUS_HALF, PLUS_HALF, coefficient_decay, delta_reproduction_check, eval_J,
    orthogonality_matrix, tail_sum_identity, taylor_at_one,
)
from suites.base_suite import BaseSuite

DEGREE = 50
TOLERANCE = 1e-10


def _test_function(x):
    return np.exp(2.0 * (x - 1.0)) * (1.0 + 0.25 * x)


class QuadratureSuite(BaseSuite):

    def get_suite_name(self) -> str:
        return 'quadrature'

    def run_checks(self) -> None:
        for a in (MINUS_HALF, PLUS_HALF):
            gram = orthogonality_matrix(a, DEGREE + 1)
            self.check(f"orthogonality a={a:+.1f}", np.max(np.abs(gram - np.eye(DEGREE + 1))),
                       TOLERANCE, kind='max', degree=DEGREE)

            for zeta in (-0.7, 0.0, 0.4):
                value = delta_reproduction_check(_test_function, zeta, a, DEGREE)
                self.check(f"expansion reproduces T at {zeta} a={a:+.1f}", value, TOLERANCE,
                           expected=float(_test_function(np.array(zeta))))

            for s in (0, 3, 10):
                tail, closed = tail_sum_identity(_test_function, s, a, DEGREE)
                self.check(f"tail sum identity s={s} a={a:+.1f}", tail, TOLERANCE, expected=closed)

            for s in (2, 7, 12):
                coefficients = taylor_at_one(a, s)
                x = 0.8
                series = sum(float(c) * (x - 1.0) ** k for k, c in enumerate(coefficients))
                self.check(f"Taylor expansion at 1, s={s} a={a:+.1f}", series,
                           TOLERANCE * max(1.0, abs(series)), expected=eval_J(a, s, x))

        moments = coefficient_decay(_test_function, DEGREE)
        self.check("J-moments of T decay", abs(moments[-1]), TOLERANCE, kind='max')
