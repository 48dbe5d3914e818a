"""
Saddle point, limit shape and bulk/frozen kernel limits
"""
import numpy as np

from growth.asymptotics import (
    FROZEN_RIGHT, LIQUID, bulk_kernel_limit_check, frozen_boundary, limit_density,
    limit_shape_h, limit_shape_integral, quartic_Q, saddle,
)
from growth.chebyshev_jacobi import MINUS_HALF
from growth.errors import DegenerateSaddleError
from suites.base_suite import BaseSuite

N_BULK = 200
LIQUID_POINTS = ((1.0, 1.0, 1.0), (1.0, 2.0, 1.0), (0.5, 0.8, 1.0), (2.0, 1.5, 1.0), (1.0, 0.3, 1.0))
STEP = 1e-4


class BulkSuite(BaseSuite):

    def get_suite_name(self) -> str:
        return 'bulk'

    def run_checks(self) -> None:
        self._saddle_structure()
        self._limit_shape()
        self._kernel_limits()

    def _saddle_structure(self) -> None:
        rng = np.random.default_rng(self.seed)
        worst_product, mismatches = 0.0, 0
        for _ in range(100):
            t, d, l = rng.uniform(0.1, 3.0, size=3)
            try:
                data = saddle(t, d, l)
            except DegenerateSaddleError:
                continue
            worst_product = max(worst_product, abs(np.prod(data.roots) + 1.0))
            if (data.region == LIQUID) != (quartic_Q(t, l, d) < 0):
                mismatches += 1
        self.check("product of the roots of R", worst_product, 1e-10, kind='max', samples=100)
        self.check("region matches the discriminant sign", mismatches, 0.0)

    def _limit_shape(self) -> None:
        worst = 0.0
        for t, d, l in LIQUID_POINTS:
            slope = (limit_shape_h(t, d + STEP, l) - limit_shape_h(t, d - STEP, l)) / (2 * STEP)
            worst = max(worst, abs(slope + limit_density(t, d, l) / 2.0))
        self.check("dh/dd = -arg(z0)/(2 pi)", worst, 1e-4, kind='max', points=len(LIQUID_POINTS))

        frozen = [limit_shape_h(t, d, l) for t, d, l in ((1.0, 5.0, 1.0), (0.5, 3.0, 0.5), (2.0, 9.0, 1.0))]
        self.check("h vanishes right of the frozen boundary", max(abs(h) for h in frozen), 1e-12,
                   kind='max')
        self.check("h equals the integral of the density",
                   limit_shape_integral(1.0, 1.0, 1.0), 1e-4, expected=limit_shape_h(1.0, 1.0, 1.0))

    def _kernel_limits(self) -> None:
        exact, predicted = bulk_kernel_limit_check(1.0, 1.0, 1.0, N_BULK)
        self.check(f"liquid density at N={N_BULK}", exact, 0.02, expected=predicted)

        pair = ((0, MINUS_HALF, 0), (0, MINUS_HALF, 1))
        exact, predicted = bulk_kernel_limit_check(1.0, 1.0, 1.0, N_BULK, offsets=pair)
        self.check(f"liquid 2x2 determinant at N={N_BULK}", exact, 0.02, expected=predicted)

        _, q2 = frozen_boundary(1.0, 1.0)
        exact, _ = bulk_kernel_limit_check(1.0, 1.2 * q2, 1.0, N_BULK)
        self.check(f"{FROZEN_RIGHT} density at N={N_BULK}", exact, 0.02, kind='max')

        q1, _ = frozen_boundary(0.3, 1.0)
        exact, _ = bulk_kernel_limit_check(0.3, 0.4 * q1, 1.0, N_BULK)
        self.check(f"frozen-left density at N={N_BULK}", exact, 0.98, kind='min')
