"""
Exact kernel against Monte Carlo frequencies of the growth process
"""
from math import sqrt

import numpy as np

from growth.characters import CharacterParams
from growth.chebyshev_jacobi import MINUS_HALF, PLUS_HALF
from growth.dynamics import observable_rows, simulate_many
from growth.kernel import KernelPoint, correlation
from growth.paths import LevelIndex
from suites.base_suite import BaseSuite

GAMMA = 4.0
MAX_LEVEL = 4
MAX_S = 10
Z_TOLERANCE = 3.0

PAIRS = (
    ((1, MINUS_HALF, 0), (1, PLUS_HALF, 0)),
    ((2, MINUS_HALF, 1), (2, MINUS_HALF, 2)),
    ((1, MINUS_HALF, 1), (2, PLUS_HALF, 2)),
    ((3, MINUS_HALF, 2), (3, PLUS_HALF, 3)),
    ((2, PLUS_HALF, 0), (4, MINUS_HALF, 3)),
    ((4, PLUS_HALF, 4), (4, PLUS_HALF, 5)),
)


def occupation_array(configs, rows: int, width: int) -> np.ndarray:
    """occupied[i, m-1, y] for replica i."""
    occupied = np.zeros((len(configs), rows, width + 1), dtype=bool)
    for i, config in enumerate(configs):
        for m in range(1, rows + 1):
            positions = [y for y in config.row(m) if y <= width]
            occupied[i, m - 1, positions] = True
    return occupied


class KernelMonteCarloSuite(BaseSuite):

    def get_suite_name(self) -> str:
        return 'kernel-mc'

    def _compare(self, name: str, points, occupied: np.ndarray, omega: CharacterParams) -> None:
        replicas = occupied.shape[0]
        exact = correlation(omega, points)
        hits = np.ones(replicas, dtype=bool)
        for point in points:
            y, m = point.to_particle()
            hits &= occupied[:, m - 1, y]
        empirical = float(hits.mean())
        se = sqrt(max(exact * (1.0 - exact), 1.0 / replicas) / replicas)
        self.check(name, (empirical - exact) / se, Z_TOLERANCE, kind='z',
                   exact=exact, empirical=empirical, replicas=replicas)

    def run_checks(self) -> None:
        replicas = self.sample_size(200000)
        M = LevelIndex(MAX_LEVEL, PLUS_HALF).row
        rows = observable_rows(M)
        width = 2 * MAX_S + 1
        configs = simulate_many(GAMMA, M, self.seed, replicas, jobs=self.jobs, progress=self.progress)
        occupied = occupation_array(configs, rows, width)
        omega = CharacterParams.plancherel(GAMMA)

        for n in range(1, MAX_LEVEL + 1):
            for a in (MINUS_HALF, PLUS_HALF):
                for s in range(MAX_S + 1):
                    point = KernelPoint.of(n, a, s)
                    self._compare(f"density at {point}", [point], occupied, omega)
        for first, second in PAIRS:
            points = [KernelPoint.of(*first), KernelPoint.of(*second)]
            self._compare(f"pair {points[0]} {points[1]}", points, occupied, omega)
