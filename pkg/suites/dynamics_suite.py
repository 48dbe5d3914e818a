"""
Growth dynamics, one-level transition matrices and the generator semigroup
"""
from collections import Counter
from math import sqrt

import numpy as np

from growth.chebyshev_jacobi import MINUS_HALF, PLUS_HALF
from growth.characters import plancherel_marginal
from growth.dynamics import expm_oracle, simulate_many, truncated_generator
from growth.paths import LevelIndex, PathConfig, enumerate_paths, project_to_path
from growth.transitions import (
    LinearPhi, cauchy_binet_check, central_conditional, commutation_residual, composed_law,
    d_r_bound, d_r_recurrence, total_variation, transition_matrix,
)
from suites.base_suite import BaseSuite

STEP_PROBABILITIES = (0.1, 0.3, 0.5)
MAX_PART = 6


class DynamicsSuite(BaseSuite):

    def get_suite_name(self) -> str:
        return 'dynamics'

    def run_checks(self) -> None:
        self._bottom_particle_law()
        self._transition_matrices()
        self._multiplicativity()
        self._commutation()
        self._semigroup()
        self._central_conditional()

    def _bottom_particle_law(self) -> None:
        t = 2.0
        replicas = self.sample_size(50000)
        configs = simulate_many(t, 1, self.seed, replicas, jobs=self.jobs, progress=self.progress)
        counts = Counter(config.row(1)[0] // 2 for config in configs)
        for k in range(7):
            p = plancherel_marginal(k, t)
            se = sqrt(p * (1.0 - p) / replicas)
            z = (counts.get(k, 0) / replicas - p) / se
            self.check(f"P(lambda = {k}) at t={t}", z, 3.0, kind='z',
                       empirical=counts.get(k, 0) / replicas, oracle=p, replicas=replicas)

    def _transition_matrices(self) -> None:
        for p in STEP_PROBABILITIES:
            phi = LinearPhi.step(p)
            for N in range(1, 5):
                for a in (MINUS_HALF, PLUS_HALF):
                    states, T = transition_matrix(N, a, phi, MAX_PART)
                    interior = [i for i, mu in enumerate(states) if mu[0] <= MAX_PART - 1]
                    label = f"p={p} N={N} a={a:+.1f}"
                    self.check(f"row sums {label}", np.max(np.abs(T[interior].sum(axis=1) - 1.0)),
                               1e-12, kind='max')
                    self.check(f"smallest entry {label}", T.min(), -1e-14, kind='min')
                    margin = np.min(np.diag(T)) - d_r_bound(N, phi.p0, phi.p1)
                    self.check(f"diagonal above the determinant bound {label}", margin, -1e-12,
                               kind='min')
                self.check(f"determinant recurrence p={p} N={N}",
                           abs(d_r_recurrence(N, phi.p0, phi.p1) - d_r_bound(N, phi.p0, phi.p1)),
                           1e-12, kind='max')

    def _multiplicativity(self) -> None:
        phi, psi = LinearPhi.step(0.3), LinearPhi.step(0.2)
        for a in (MINUS_HALF, PLUS_HALF):
            total, direct = cauchy_binet_check(2, a, phi, (3, 1), (2, 0), 6, psi)
            self.check(f"Cauchy-Binet sum a={a:+.1f}", total, 1e-10, expected=direct)

    def _commutation(self) -> None:
        phi = LinearPhi.step(0.3)
        for m in range(2, 7):
            upper = LevelIndex.from_row(m)
            self.check(f"commutation at level {upper}", commutation_residual(upper, phi, MAX_PART),
                       1e-10, kind='max')

    def _semigroup(self) -> None:
        t, steps = 0.5, 64
        for a in (MINUS_HALF, PLUS_HALF):
            generator = truncated_generator(1, a, 10)
            start = PathConfig.zero(LevelIndex(1, a))
            initial = np.zeros(len(generator.states))
            initial[generator.index_of(start)] = 1.0
            exact = expm_oracle(generator, t, initial).distribution
            raw = total_variation(exact, generator.states, composed_law(t, start, steps))
            gap = total_variation(exact, generator.states,
                                  composed_law(t, start, steps, extrapolate=True))
            self.check(f"semigroup against {steps}/{2 * steps} composed steps a={a:+.1f}", gap,
                       2e-3, kind='max', single_pass=raw)

    def _central_conditional(self) -> None:
        t, M = 1.0, 3
        replicas = self.sample_size(100000)
        configs = simulate_many(t, M, self.seed + 1, replicas, jobs=self.jobs, progress=self.progress)
        paths = [project_to_path(config, 2, MINUS_HALF) for config in configs]
        top_counts = Counter(path.partitions[-1] for path in paths)
        top, total = top_counts.most_common(1)[0]
        observed = Counter(path.partitions for path in paths if path.partitions[-1] == top)
        candidates = [path for path in enumerate_paths(LevelIndex(2, MINUS_HALF), top[0])
                      if path.partitions[-1] == top]
        worst = 0.0
        for path in candidates:
            p = central_conditional(path)
            if p * total < 20 or p >= 1.0:
                continue
            z = (observed.get(path.partitions, 0) - total * p) / sqrt(total * p * (1.0 - p))
            worst = max(worst, abs(z))
        self.check(f"lower rows given row {M} = {top}", worst, 3.0, kind='z',
                   conditioned_samples=total, cells=len(candidates))
