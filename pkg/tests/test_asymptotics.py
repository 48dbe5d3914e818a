from math import pi

import numpy as np
import pytest

from config.settings import GRID_COLUMNS
from growth.asymptotics import (
    DEGENERATE, FROZEN_LEFT, FROZEN_RIGHT, LIQUID, action_S_prime, bulk_kernel_limit_check,
    cubic_R, discrete_jacobi_L, discrete_jacobi_closed_form, frozen_boundary, height_grid,
    incomplete_beta_kernel, limit_density, limit_shape_h, limit_shape_integral, quartic_Q, saddle,
    wall_kernel_limit_check,
)
from growth.chebyshev_jacobi import MINUS_HALF, PLUS_HALF
from growth.errors import DegenerateSaddleError, DomainError
from growth.kernel import KernelPoint


class TestCubic:

    def test_coefficients(self):
        assert cubic_R(1.0, 1.0, 1.0) == (1.0, 3.0, -1.0, 1.0)

    @pytest.mark.parametrize('t,d,l', [(1.0, 1.0, 1.0), (0.3, 2.0, 0.7), (2.5, 0.4, 1.1)])
    def test_value_at_minus_one(self, t, d, l):
        R = np.polynomial.Polynomial(cubic_R(t, d, l))
        assert R(-1.0) == pytest.approx(-4.0 * d)

    def test_critical_points_of_the_action(self):
        data = saddle(1.0, 1.0, 1.0)
        for z in data.roots:
            assert abs(action_S_prime(z, 1.0, 1.0, 1.0)) < 1e-10

    def test_roots_multiply_to_minus_one(self):
        for t, d, l in [(1.0, 1.0, 1.0), (0.5, 3.0, 0.5), (0.2, 0.1, 1.0)]:
            assert np.prod(saddle(t, d, l).roots) == pytest.approx(-1.0, abs=1e-10)


class TestFrozenBoundary:

    def test_equal_time_and_level(self):
        q1, q2 = frozen_boundary(1.0, 1.0)
        assert q1 == 0.0
        assert q2 == pytest.approx(3.3302, abs=1e-4)

    def test_left_boundary_appears_for_small_times(self):
        q1, q2 = frozen_boundary(0.2, 1.0)
        assert 0.0 < q1 < q2
        assert frozen_boundary(0.6, 1.0)[0] == 0.0

    @pytest.mark.parametrize('t,l', [(0.2, 1.0), (1.0, 1.0), (3.0, 0.5)])
    def test_boundary_is_a_zero_of_the_quartic(self, t, l):
        q1, q2 = frozen_boundary(t, l)
        assert quartic_Q(t, l, l * q2) == pytest.approx(0.0, abs=1e-9)
        if q1 > 0:
            assert quartic_Q(t, l, l * q1) == pytest.approx(0.0, abs=1e-9)

    def test_rejects_nonpositive_arguments(self):
        with pytest.raises(DomainError):
            frozen_boundary(0.0, 1.0)


class TestRegions:

    def test_liquid(self):
        data = saddle(1.0, 1.0, 1.0)
        assert data.region == LIQUID
        assert data.z0.imag > 0

    def test_frozen_right(self):
        data = saddle(1.0, 5.0, 1.0)
        assert data.region == FROZEN_RIGHT
        assert limit_density(1.0, 5.0, 1.0) == 0.0

    def test_frozen_left(self):
        data = saddle(0.2, 0.1, 1.0)
        assert data.region == FROZEN_LEFT
        assert limit_density(0.2, 0.1, 1.0) == pytest.approx(1.0)

    def test_degenerate(self):
        _, q2 = frozen_boundary(1.0, 1.0)
        with pytest.raises(DegenerateSaddleError):
            saddle(1.0, q2, 1.0)

    def test_density_is_a_fraction(self):
        assert 0.0 < limit_density(1.0, 1.0, 1.0) < 1.0

    def test_rejects_nonpositive_coordinates(self):
        with pytest.raises(DomainError):
            saddle(1.0, 0.0, 1.0)


class TestLimitShape:

    def test_zero_right_of_the_boundary(self):
        assert limit_shape_h(1.0, 5.0, 1.0) == 0.0

    def test_frozen_left_is_linear(self):
        assert limit_shape_h(0.2, 0.1, 1.0) == pytest.approx((1.0 - 0.1) / 2.0, abs=1e-10)

    @pytest.mark.parametrize('t,d,l', [(1.0, 1.0, 1.0), (0.5, 0.8, 1.0), (2.0, 1.5, 1.0)])
    def test_slope_is_minus_half_the_density(self, t, d, l):
        step = 1e-4
        slope = (limit_shape_h(t, d + step, l) - limit_shape_h(t, d - step, l)) / (2 * step)
        assert slope == pytest.approx(-limit_density(t, d, l) / 2.0, abs=1e-4)

    def test_ladder_agrees_with_principal_branch(self):
        assert limit_shape_h(1.0, 1.0, 1.0, ladder=True) == pytest.approx(
            limit_shape_h(1.0, 1.0, 1.0), abs=1e-8)

    def test_matches_the_integral_of_the_density(self):
        assert limit_shape_integral(1.0, 1.0, 1.0) == pytest.approx(
            limit_shape_h(1.0, 1.0, 1.0), abs=1e-4)
        assert limit_shape_integral(1.0, 5.0, 1.0) == 0.0

    def test_height_grid(self):
        _, q2 = frozen_boundary(1.0, 1.0)
        rows = height_grid(1.0, [1.0, q2, 5.0], [1.0])
        assert len(rows) == 3
        assert all(set(row) == set(GRID_COLUMNS) for row in rows)
        assert [row['region'] for row in rows] == [LIQUID, DEGENERATE, FROZEN_RIGHT]
        assert rows[1]['status'] == 'degenerate'
        assert np.isnan(rows[1]['h'])
        assert rows[2]['h'] == 0.0


class TestIncompleteBeta:

    def test_trivial_indices_give_the_argument(self):
        zeta = 0.4 + 0.7j
        assert incomplete_beta_kernel(0, 0, zeta) == pytest.approx(np.angle(zeta) / pi)

    def test_at_the_saddle_point_it_is_the_density(self):
        data = saddle(1.0, 1.0, 1.0)
        assert incomplete_beta_kernel(0, 0, data.z0) == pytest.approx(limit_density(1.0, 1.0, 1.0))

    def test_path_independence(self):
        zeta = 0.3 + 0.8j
        assert incomplete_beta_kernel(2, 1, zeta, crossing=0.2) == pytest.approx(
            incomplete_beta_kernel(2, 1, zeta, crossing=0.8), abs=1e-12)
        assert incomplete_beta_kernel(-1, 1, zeta, crossing=-1.0) == pytest.approx(
            incomplete_beta_kernel(-1, 1, zeta, crossing=-2.5), abs=1e-12)

    def test_domain(self):
        with pytest.raises(DomainError):
            incomplete_beta_kernel(0, 0, 0.5)
        with pytest.raises(DomainError, match='crossing'):
            incomplete_beta_kernel(1, 0, 0.5 + 0.5j, crossing=1.5)


class TestDiscreteJacobi:

    @pytest.mark.parametrize('u', [-0.5, 0.0, 0.7])
    def test_closed_form_matches_the_integral(self, u):
        for s1 in range(8):
            for s2 in range(8):
                p1, p2 = KernelPoint.of(3, MINUS_HALF, s1), KernelPoint.of(3, MINUS_HALF, s2)
                assert discrete_jacobi_L(p1, p2, u) == pytest.approx(
                    discrete_jacobi_closed_form(s1, s2, u), abs=1e-10)

    def test_closed_form_at_the_wall(self):
        assert discrete_jacobi_closed_form(0, 0, 0.0) == pytest.approx(0.5)

    def test_full_interval_is_the_identity(self):
        p = KernelPoint.of(2, PLUS_HALF, 3)
        assert discrete_jacobi_L(p, p, -1.0 + 1e-12) == pytest.approx(1.0, abs=1e-5)

    def test_domain(self):
        p = KernelPoint.of(1, MINUS_HALF, 0)
        with pytest.raises(DomainError):
            discrete_jacobi_L(p, p, 1.0)
        with pytest.raises(DomainError):
            wall_kernel_limit_check(1.0, 3.0, 10, [(0, MINUS_HALF, 0)])


@pytest.mark.slow
class TestFiniteNLimits:

    def test_liquid_density(self):
        exact, predicted = bulk_kernel_limit_check(1.0, 1.0, 1.0, 200)
        assert exact == pytest.approx(predicted, abs=0.02)

    def test_frozen_right_density(self):
        _, q2 = frozen_boundary(1.0, 1.0)
        exact, predicted = bulk_kernel_limit_check(1.0, 1.2 * q2, 1.0, 200)
        assert predicted == 0.0
        assert exact < 0.02

    def test_wall_density(self):
        exact, predicted = wall_kernel_limit_check(1.0, 1.0, 300, [(0, MINUS_HALF, 2)])
        assert exact == pytest.approx(predicted, abs=0.01)
