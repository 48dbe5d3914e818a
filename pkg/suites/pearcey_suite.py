"""
Symmetric Pearcey limit where the frozen boundary touches the wall
"""
from math import pi, sqrt

from growth.pearcey import (
    PearceyPoint, finite_n_pearcey, gaussian_term, pearcey_integral, pearcey_integral_polar,
    symmetric_pearcey_K,
)
from suites.base_suite import BaseSuite

SIGMA, ETA = 1.0, 0.0
SIZES = (100, 200, 400)


class PearceySuite(BaseSuite):

    def get_suite_name(self) -> str:
        return 'pearcey'

    def run_checks(self) -> None:
        point = PearceyPoint(SIGMA, ETA)
        limit = symmetric_pearcey_K(point, point)
        gaps = []
        for N in SIZES:
            value = finite_n_pearcey(SIGMA, ETA, N)['value']
            gaps.append(abs(value - limit))
            self.check(f"gap to the limit at N={N}", gaps[-1], abs(limit), kind='max',
                       value=value, limit=limit)
        shrinking = all(later <= earlier for earlier, later in zip(gaps, gaps[1:]))
        self.check("gaps shrink with N", float(shrinking), 1.0, kind='min', gaps=gaps)
        self.check(f"relative gap at N={SIZES[-1]}", gaps[-1] / abs(limit), 0.05, kind='max')

        self.check("Gaussian term at sigma=0, eta gap 1",
                   gaussian_term(PearceyPoint(0.0, 1.0), PearceyPoint(0.0, 0.0)), 1e-12,
                   expected=-1.0 / sqrt(pi))

        for p, q in ((PearceyPoint(0.3, 0.0), PearceyPoint(1.2, 0.0)),
                     (PearceyPoint(1.2, 0.0), PearceyPoint(0.3, 0.0))):
            self.check(f"polar and split evaluations at ({p.sigma}, {q.sigma})",
                       pearcey_integral_polar(p, q), 1e-6, expected=pearcey_integral(p, q))
