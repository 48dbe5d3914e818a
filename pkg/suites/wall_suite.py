"""
Discrete Jacobi limit of the kernel at the wall
"""
from itertools import combinations

from growth.asymptotics import discrete_jacobi_L, discrete_jacobi_closed_form, wall_kernel_limit_check
from growth.chebyshev_jacobi import MINUS_HALF, PLUS_HALF
from growth.kernel import KernelPoint
from suites.base_suite import BaseSuite

N_WALL = 300
MAX_S = 6


class WallSuite(BaseSuite):

    def get_suite_name(self) -> str:
        return 'wall'

    def run_checks(self) -> None:
        worst = 0.0
        for u in (-0.5, 0.0, 0.7):
            for s1 in range(21):
                for s2 in range(21):
                    p1, p2 = KernelPoint.of(3, MINUS_HALF, s1), KernelPoint.of(3, MINUS_HALF, s2)
                    gap = discrete_jacobi_L(p1, p2, u) - discrete_jacobi_closed_form(s1, s2, u)
                    worst = max(worst, abs(gap))
        self.check("closed form matches the defining integral", worst, 1e-9, kind='max')

        for a in (MINUS_HALF, PLUS_HALF):
            for s in range(MAX_S + 1):
                exact, predicted = wall_kernel_limit_check(1.0, 1.0, N_WALL, [(0, a, s)])
                self.check(f"density at s={s} a={a:+.1f} N={N_WALL}", exact, 0.01, expected=predicted)

        pairs = [((0, MINUS_HALF, s1), (0, MINUS_HALF, s2)) for s1, s2 in combinations(range(4), 2)]
        pairs += [((0, MINUS_HALF, 1), (0, PLUS_HALF, 1)), ((0, PLUS_HALF, 2), (1, MINUS_HALF, 2))]
        for first, second in pairs:
            exact, predicted = wall_kernel_limit_check(1.0, 1.0, N_WALL, [first, second])
            self.check(f"2x2 determinant {first} {second} N={N_WALL}", exact, 0.01, expected=predicted)
