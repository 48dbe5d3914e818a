from math import sqrt

import numpy as np
import pytest

from growth.characters import CharacterParams
from growth.chebyshev_jacobi import MINUS_HALF
from growth.errors import DomainError
from growth.kernel import KernelPoint, correlation
from suites import KernelMonteCarloSuite, MeasuresSuite, QuadratureSuite
from suites.base_suite import BaseSuite
from suites.kernel_mc_suite import GAMMA


class ScriptedSuite(BaseSuite):
    """Runs a fixed list of checks, optionally ending in a library error."""

    def __init__(self, checks, error=None, **kwargs):
        super().__init__(**kwargs)
        self.scripted = checks
        self.error = error

    def get_suite_name(self) -> str:
        return 'scripted'

    def run_checks(self) -> None:
        for args, kwargs in self.scripted:
            self.check(*args, **kwargs)
        if self.error is not None:
            raise self.error


class TestBaseSuite:

    def test_passed(self):
        result = ScriptedSuite([(('close', 1.0, 1e-3), {'expected': 1.0005})]).run()
        assert result['status'] == 'passed'
        assert result['checks'][0]['passed']
        assert result['wall_clock'] >= 0

    def test_failed(self):
        checks = [(('too big', 2.0, 1.0), {'kind': 'max'}), (('ok', 0.5, 1.0), {'kind': 'max'})]
        result = ScriptedSuite(checks).run()
        assert result['status'] == 'failed'
        assert [c['passed'] for c in result['checks']] == [False, True]

    def test_library_errors_become_error_status(self):
        result = ScriptedSuite([], error=DomainError('bad level')).run()
        assert result['status'] == 'error'
        assert result['error_message'] == 'DomainError: bad level'

    @pytest.mark.parametrize('kind,measured,tolerance,expected,passed', [
        ('abs', 1.1, 0.2, 1.0, True),
        ('rel', 110.0, 0.05, 100.0, False),
        ('min', 0.3, 0.5, 0.0, False),
        ('z', -2.5, 3.0, 0.0, True),
        ('max', float('nan'), 1.0, 0.0, False),
    ])
    def test_check_kinds(self, kind, measured, tolerance, expected, passed):
        suite = ScriptedSuite([])
        assert suite.check('x', measured, tolerance, expected=expected, kind=kind) is passed

    def test_unknown_kind(self):
        with pytest.raises(ValueError, match='unknown check kind'):
            ScriptedSuite([]).check('x', 1.0, 1.0, kind='median')

    def test_details_are_recorded(self):
        suite = ScriptedSuite([])
        suite.check('x', 1.0, 3.0, kind='z', replicas=100)
        assert suite.checks[0]['replicas'] == 100

    def test_sample_size_override(self):
        assert ScriptedSuite([]).sample_size(500) == 500
        assert ScriptedSuite([], replicas=20).sample_size(500) == 20


class TestSuites:

    def test_quadrature_suite_passes(self):
        result = QuadratureSuite().run()
        assert result['status'] == 'passed', [c for c in result['checks'] if not c['passed']]
        assert len(result['checks']) > 10

    @pytest.mark.slow
    def test_measures_suite_passes(self):
        result = MeasuresSuite(seed=3).run()
        assert result['status'] == 'passed', [c for c in result['checks'] if not c['passed']]

    @pytest.mark.parametrize('deviation,passed', [(2.5, True), (3.5, False)])
    def test_kernel_comparison_rejects_beyond_three_standard_errors(self, deviation, passed):
        omega = CharacterParams.plancherel(GAMMA)
        point = KernelPoint.of(1, MINUS_HALF, 0)
        exact = correlation(omega, [point])
        replicas = 100000
        se = sqrt(exact * (1.0 - exact) / replicas)
        y, m = point.to_particle()
        occupied = np.zeros((replicas, m, y + 1), dtype=bool)
        occupied[:int(round(replicas * (exact - deviation * se))), m - 1, y] = True
        suite = KernelMonteCarloSuite()
        suite._compare('one point', [point], occupied, omega)
        assert suite.checks[-1]['passed'] is passed
