import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.special import iv, ive

from growth.characters import (
    CharacterParams, SignaturePartition, dim_even, dim_odd, dimension, enumerate_partitions,
    eval_E, eval_E_complex, f_coefficient, log_E_complex, measure_P, measure_table,
    normalizing_constant, plancherel_marginal,
)
from growth.chebyshev_jacobi import MINUS_HALF, PLUS_HALF, QuadratureSpec
from growth.errors import ContourError, DomainError


class TestCharacterParams:

    def test_plancherel(self):
        omega = CharacterParams.plancherel(2.0)
        assert omega.is_plancherel
        assert omega.delta == 2.0

    def test_rejects_increasing_alpha(self):
        with pytest.raises(DomainError, match='nonincreasing'):
            CharacterParams((0.1, 0.5), (), 1.0)

    def test_rejects_negative_gamma(self):
        with pytest.raises(DomainError, match='gamma'):
            CharacterParams((), (), -1.0)

    def test_kernel_admissibility(self):
        CharacterParams((), (0.5,), 1.0).require_kernel_admissible()
        with pytest.raises(ContourError, match='beta_1 < 1'):
            CharacterParams((), (1.0,), 1.0).require_kernel_admissible()

    def test_zeros_of_E_lie_left_of_minus_one(self):
        omega = CharacterParams((), (0.9, 0.3), 0.0)
        for zero in omega.zeros_of_E():
            assert zero < -1.0
            assert eval_E_complex(omega, zero) == pytest.approx(0.0, abs=1e-12)


class TestEvalE:

    def test_plancherel_is_exponential(self):
        x = np.linspace(-1, 1, 9)
        assert_allclose(eval_E(CharacterParams.plancherel(3.0), x), np.exp(3.0 * (x - 1.0)))

    def test_value_at_one(self):
        omega = CharacterParams((0.4,), (0.2,), 1.0)
        assert eval_E(omega, 1.0) == pytest.approx(1.0)

    def test_alpha_and_beta_factors(self):
        omega = CharacterParams((0.4,), (0.2,), 0.0)
        x = -0.3
        b, c = 0.2 - 0.02, 0.4 + 0.08
        assert eval_E(omega, x) == pytest.approx((1 + b * (x - 1)) / (1 - c * (x - 1)))

    def test_log_matches_value(self):
        omega = CharacterParams((0.3,), (0.5,), 2.0)
        u = 0.2 + 0.7j
        assert np.exp(log_E_complex(omega, u)) == pytest.approx(eval_E_complex(omega, u))

    def test_domain(self):
        with pytest.raises(DomainError):
            eval_E(CharacterParams.trivial(), 1.5)


class TestDimensions:

    def test_rank_one(self):
        # SO(3): 2m + 1; the even rank-one dimension is 1 in this normalization
        assert dim_odd(1, (4,)) == 9
        assert dim_even(1, (4,)) == 1
        assert dim_even(1, (0,)) == 1

    def test_known_values(self):
        # SO(5) adjoint and vector
        assert dim_odd(2, (1, 1)) == 10
        assert dim_odd(2, (1, 0)) == 5
        # SO(4) vector
        assert dim_even(2, (1, 0)) == 4

    def test_dispatch(self):
        assert dimension(2, PLUS_HALF, (1, 0)) == dim_odd(2, (1, 0))
        assert dimension(2, MINUS_HALF, (1, 0)) == dim_even(2, (1, 0))

    def test_length_mismatch(self):
        with pytest.raises(DomainError, match='does not match'):
            dim_odd(2, (1,))

    def test_signature_partition(self):
        assert SignaturePartition.zero(3).parts == (0, 0, 0)
        with pytest.raises(DomainError):
            SignaturePartition((1, 2))


class TestMeasures:

    def test_normalizing_constants(self):
        assert normalizing_constant(1, PLUS_HALF) == 1.0
        assert normalizing_constant(3, PLUS_HALF) == 8.0
        assert normalizing_constant(1, MINUS_HALF) == 1.0
        assert normalizing_constant(3, MINUS_HALF) == 2.0

    @pytest.mark.parametrize('a', [MINUS_HALF, PLUS_HALF])
    @pytest.mark.parametrize('N', [1, 2, 3])
    def test_total_mass(self, a, N):
        table = measure_table(CharacterParams.plancherel(2.0), N, a, 30)
        assert sum(table.values()) == pytest.approx(1.0, abs=1e-10)
        assert min(table.values()) > -1e-12

    @pytest.mark.parametrize('a', [MINUS_HALF, PLUS_HALF])
    @pytest.mark.parametrize('N', [1, 2, 3])
    @pytest.mark.parametrize('t', [1.0, 4.0])
    def test_total_mass_at_forty(self, t, a, N):
        table = measure_table(CharacterParams.plancherel(t), N, a, 40)
        assert sum(table.values()) == pytest.approx(1.0, abs=1e-10)
        assert min(table.values()) > -1e-12

    @pytest.mark.parametrize('a', [MINUS_HALF, PLUS_HALF])
    def test_fourier_coefficients_match_quadrature(self, a):
        omega = CharacterParams((0.3,), (0.4,), 1.0)
        q = QuadratureSpec(256)
        for j in range(1, 4):
            for k in range(9):
                assert f_coefficient(omega, 3, a, j, k) == pytest.approx(
                    f_coefficient(omega, 3, a, j, k, q), abs=1e-12)

    def test_large_parts_keep_relative_accuracy(self):
        t = 1.0
        table = measure_table(CharacterParams.plancherel(t), 1, MINUS_HALF, 40)
        assert table[(40,)] == pytest.approx(2.0 * ive(40, t), rel=1e-10)
        assert table[(40,)] > 0.0

    def test_table_matches_single_evaluations(self):
        omega = CharacterParams.plancherel(1.0)
        table = measure_table(omega, 2, PLUS_HALF, 6)
        for lam in [(0, 0), (2, 1), (5, 3)]:
            assert table[lam] == pytest.approx(measure_P(omega, 2, PLUS_HALF, lam), abs=1e-14)

    def test_trivial_character_is_a_point_mass(self):
        table = measure_table(CharacterParams.trivial(), 2, MINUS_HALF, 5)
        assert table[(0, 0)] == pytest.approx(1.0)
        assert sum(abs(v) for k, v in table.items() if k != (0, 0)) < 1e-12

    def test_bessel_marginal(self):
        t = 2.0
        table = measure_table(CharacterParams.plancherel(t), 1, MINUS_HALF, 20)
        for k in range(7):
            expected = np.exp(-t) * (2.0 if k else 1.0) * iv(k, t)
            assert table[(k,)] == pytest.approx(expected, abs=1e-12)
            assert plancherel_marginal(k, t) == pytest.approx(expected, rel=1e-12)

    def test_non_plancherel_character_normalizes(self):
        omega = CharacterParams((0.3,), (0.4,), 1.0)
        table = measure_table(omega, 2, PLUS_HALF, 40)
        assert sum(table.values()) == pytest.approx(1.0, abs=1e-8)

    def test_f_coefficient_bounds(self):
        with pytest.raises(DomainError, match='j must lie'):
            f_coefficient(CharacterParams.trivial(), 2, MINUS_HALF, 3, 0)

    def test_enumerate_partitions(self):
        parts = list(enumerate_partitions(2, 2))
        assert len(parts) == 6
        assert all(p[0] >= p[1] for p in parts)
