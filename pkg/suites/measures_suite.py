"""
Exact finite-level measures and exact kernel identities
"""
import numpy as np

from growth.characters import CharacterParams, measure_table, plancherel_marginal
from growth.chebyshev_jacobi import MINUS_HALF, PLUS_HALF
from growth.kernel import KernelPoint, correlation, eval_K, eval_K_hole, inclusion_exclusion_holes
from suites.base_suite import BaseSuite

TRUNCATION = 40


class MeasuresSuite(BaseSuite):

    def get_suite_name(self) -> str:
        return 'measures'

    def run_checks(self) -> None:
        self._normalization()
        self._bottom_marginal()
        self._trivial_kernel()
        self._hole_identities()

    def _normalization(self) -> None:
        for t in (1.0, 4.0):
            omega = CharacterParams.plancherel(t)
            for N in (1, 2, 3):
                for a in (MINUS_HALF, PLUS_HALF):
                    table = measure_table(omega, N, a, TRUNCATION)
                    self.check(f"total mass t={t} N={N} a={a:+.1f}", sum(table.values()), 1e-10,
                               expected=1.0, truncation=TRUNCATION)
                    self.check(f"nonnegative masses t={t} N={N} a={a:+.1f}", min(table.values()),
                               -1e-12, kind='min')

    def _bottom_marginal(self) -> None:
        t = 2.0
        table = measure_table(CharacterParams.plancherel(t), 1, MINUS_HALF, TRUNCATION)
        gap = max(abs(table[(k,)] - plancherel_marginal(k, t)) for k in range(TRUNCATION + 1))
        self.check("level (1,-1/2) marginal equals the Bessel law", gap, 1e-10, kind='max')

    def _trivial_kernel(self) -> None:
        omega = CharacterParams.trivial()
        worst = 0.0
        for n in range(1, 11):
            for a in (MINUS_HALF, PLUS_HALF):
                for s in range(n + 3):
                    point = KernelPoint.of(n, a, s)
                    indicator = 1.0 if s <= n - 1 else 0.0
                    worst = max(worst, abs(eval_K(omega, point, point) - indicator))
        self.check("trivial character gives the packed state", worst, 1e-8, kind='max')

    def _hole_identities(self) -> None:
        omega = CharacterParams.plancherel(1.5)
        rng = np.random.default_rng(self.seed)
        worst = 0.0
        for _ in range(50):
            p, q = (KernelPoint.of(int(rng.integers(1, 4)), float(rng.choice([MINUS_HALF, PLUS_HALF])),
                                   int(rng.integers(0, 6))) for _ in range(2))
            delta = 1.0 if p == q else 0.0
            worst = max(worst, abs(eval_K(omega, p, q) + eval_K_hole(omega, p, q) - delta))
        self.check("K + K_hole = delta on random pairs", worst, 1e-12, kind='max', pairs=50)

        window = [KernelPoint.of(2, MINUS_HALF, s) for s in range(4)]
        self.check("inclusion-exclusion over a 4-point window",
                   inclusion_exclusion_holes(omega, window), 1e-8,
                   expected=correlation(omega, window, hole=True))
