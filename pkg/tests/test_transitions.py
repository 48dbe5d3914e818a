import numpy as np
import pytest
from numpy.testing import assert_allclose

from growth.characters import CharacterParams, measure_table
from growth.chebyshev_jacobi import MINUS_HALF, PLUS_HALF
from growth.dynamics import expm_oracle, truncated_generator
from growth.errors import DomainError, ForbiddenTransitionError
from growth.paths import LevelIndex, PathConfig, enumerate_paths, precedes
from growth.transitions import (
    I_phi, LinearPhi, _conditional, cauchy_binet_check, central_conditional, commutation_residual,
    composed_law, d_r_bound, d_r_recurrence, link_between, link_down_N, link_matrix, link_same_N,
    multivariate_distribution, multivariate_step, propagate, total_variation, transition_T,
    transition_matrix, transition_row,
)


class TestLinearPhi:

    def test_step(self):
        phi = LinearPhi.step(0.3)
        assert phi.p0 == pytest.approx(0.7)
        assert phi(1.0) == pytest.approx(1.0)

    def test_must_be_one_at_one(self):
        with pytest.raises(DomainError, match='phi\\(1\\)'):
            LinearPhi(0.5, 0.2)


class TestIPhi:

    def test_band_values(self):
        phi = LinearPhi(0.6, 0.4)
        assert I_phi(PLUS_HALF, phi, 0, 0) == pytest.approx(0.6 - 0.2)
        assert I_phi(MINUS_HALF, phi, 0, 0) == pytest.approx(0.6)
        assert I_phi(MINUS_HALF, phi, 0, 1) == pytest.approx(0.4)
        assert I_phi(MINUS_HALF, phi, 1, 0) == pytest.approx(0.2)
        assert I_phi(PLUS_HALF, phi, 3, 4) == pytest.approx(0.2)
        assert I_phi(PLUS_HALF, phi, 1, 3) == 0.0

    @pytest.mark.parametrize('a', [MINUS_HALF, PLUS_HALF])
    def test_band_matches_quadrature(self, a):
        phi = LinearPhi(0.3, 0.7)
        for k in range(4):
            for l in range(4):
                assert I_phi(a, lambda x: 0.3 + 0.7 * x, k, l) == pytest.approx(
                    I_phi(a, phi, k, l), abs=1e-10)

    def test_negative_index(self):
        with pytest.raises(DomainError):
            I_phi(MINUS_HALF, LinearPhi.step(0.2), -1, 0)


class TestTransitionT:

    def test_single_particle(self):
        phi = LinearPhi.step(0.25)
        assert transition_T(1, MINUS_HALF, phi, (0,), (1,)) == pytest.approx(0.25)
        assert transition_T(1, MINUS_HALF, phi, (0,), (0,)) == pytest.approx(0.75)
        assert transition_T(1, MINUS_HALF, phi, (2,), (1,)) == pytest.approx(0.125)

    @pytest.mark.parametrize('a', [MINUS_HALF, PLUS_HALF])
    @pytest.mark.parametrize('mu', [(0, 0), (1, 0), (2, 2), (4, 1)])
    def test_rows_sum_to_one(self, a, mu):
        row = transition_row(2, a, LinearPhi.step(0.3), mu)
        assert sum(row.values()) == pytest.approx(1.0, abs=1e-12)
        assert min(row.values()) > -1e-14

    def test_moves_are_local(self):
        row = transition_row(3, PLUS_HALF, LinearPhi.step(0.4), (3, 1, 0))
        for lam in row:
            assert all(abs(l - m) <= 1 for l, m in zip(lam, (3, 1, 0)))

    def test_matrix_interior_is_stochastic(self):
        states, T = transition_matrix(2, MINUS_HALF, LinearPhi.step(0.5), 5)
        interior = [i for i, mu in enumerate(states) if mu[0] <= 4]
        assert_allclose(T[interior].sum(axis=1), 1.0, atol=1e-12)

    def test_general_phi_uses_quadrature(self):
        linear = transition_T(2, PLUS_HALF, LinearPhi.step(0.3), (1, 0), (2, 0))
        smooth = transition_T(2, PLUS_HALF, lambda x: 0.7 + 0.3 * x, (1, 0), (2, 0))
        assert smooth == pytest.approx(linear, abs=1e-10)

    def test_length_mismatch(self):
        with pytest.raises(DomainError):
            transition_T(2, PLUS_HALF, LinearPhi.step(0.3), (1,), (1, 0))


class TestLinks:

    @pytest.mark.parametrize('m', [0, 1, 4])
    def test_same_N_single_particle(self, m):
        assert link_same_N(1, (m,), (0,)) == pytest.approx(1.0 / (2 * m + 1))
        if m > 0:
            assert link_same_N(1, (m,), (m,)) == pytest.approx(2.0 / (2 * m + 1))

    def test_same_N_two_particles(self):
        assert link_same_N(2, (1, 0), (1, 0)) == pytest.approx(4.0 / 5.0)
        assert link_same_N(2, (1, 0), (0, 0)) == pytest.approx(1.0 / 5.0)
        assert link_same_N(2, (1, 1), (1, 1)) == pytest.approx(6.0 / 10.0)

    def test_down_N(self):
        assert link_down_N(2, (1, 0), (1,)) == pytest.approx(3.0 / 4.0)
        assert link_down_N(2, (2, 1), (2,)) == pytest.approx(5.0 / 8.0)
        with pytest.raises(DomainError):
            link_down_N(2, (1, 0), (1, 0))

    @pytest.mark.parametrize('m', [2, 3, 4, 5, 6])
    def test_link_rows_are_distributions(self, m):
        _, cols, link = link_matrix(LevelIndex.from_row(m), 4)
        assert_allclose(link.sum(axis=1), 1.0, atol=1e-12)
        assert link.min() > -1e-14

    def test_bottom_level_has_no_link(self):
        with pytest.raises(DomainError):
            link_between(LevelIndex(1, MINUS_HALF), (0,), ())

    def test_central_conditional_sums_to_one(self):
        top = LevelIndex(2, MINUS_HALF)
        target = (2, 1)
        paths = [path for path in enumerate_paths(top, 2) if path.partitions[-1] == target]
        assert sum(central_conditional(path) for path in paths) == pytest.approx(1.0)

    @pytest.mark.parametrize('m', [2, 3, 4, 5])
    def test_commutation(self, m):
        residual = commutation_residual(LevelIndex.from_row(m), LinearPhi.step(0.3), 5)
        assert residual < 1e-10


class TestSmallestDeterminant:

    @pytest.mark.parametrize('p', [0.1, 0.3, 0.5])
    def test_recurrence_reproduces_closed_form(self, p):
        p0, p1 = 1 - p, p
        for r in range(8):
            assert d_r_recurrence(r, p0, p1) == pytest.approx(d_r_bound(r, p0, p1), abs=1e-12)

    def test_confluent_limit(self):
        assert d_r_bound(3, 0.5, 0.5) == pytest.approx(0.25 ** 3)
        assert d_r_recurrence(3, 0.5, 0.5) == pytest.approx(0.25 ** 3)

    def test_packed_diagonal_is_the_determinant(self):
        phi = LinearPhi.step(0.3)
        for N in range(1, 4):
            packed = (0,) * N
            assert transition_T(N, PLUS_HALF, phi, packed, packed) == pytest.approx(
                d_r_bound(N, phi.p0, phi.p1), abs=1e-12)

    def test_rejects_p1_above_p0(self):
        with pytest.raises(DomainError):
            d_r_bound(2, 0.3, 0.7)


class TestCauchyBinet:

    @pytest.mark.parametrize('a', [MINUS_HALF, PLUS_HALF])
    def test_product_identity(self, a):
        total, direct = cauchy_binet_check(2, a, LinearPhi.step(0.3), (3, 1), (2, 0), 6,
                                           LinearPhi.step(0.2))
        assert total == pytest.approx(direct, abs=1e-10)

    def test_single_particle_square(self):
        total, direct = cauchy_binet_check(1, MINUS_HALF, LinearPhi.step(0.4), (2,), (2,), 5)
        assert total == pytest.approx(direct, abs=1e-10)


class TestSequentialUpdate:

    def test_trivial_phi_keeps_the_path(self):
        path = PathConfig(((1,), (2,), (2, 1)))
        assert multivariate_distribution(LinearPhi(1.0, 0.0), path) == {path.partitions: 1.0}

    def test_single_level_is_the_one_level_chain(self):
        phi = LinearPhi.step(0.25)
        path = PathConfig(((2,),))
        law = multivariate_distribution(phi, path)
        row = transition_row(1, MINUS_HALF, phi, (2,))
        assert set(law) == {(lam,) for lam in row}
        for lam, p in row.items():
            assert law[(lam,)] == pytest.approx(p)

    def test_two_levels_from_packed(self):
        p = 0.25
        phi = LinearPhi.step(p)
        law = multivariate_distribution(phi, PathConfig.zero(LevelIndex(2, MINUS_HALF)))
        assert sum(law.values()) == pytest.approx(1.0)
        for parts in law:
            PathConfig(parts)
        # bottom marginal is T(0, .)
        bottom = {}
        for parts, weight in law.items():
            bottom[parts[0]] = bottom.get(parts[0], 0.0) + weight
        assert bottom[(1,)] == pytest.approx(p)

    def test_brute_force_conditional(self):
        phi = LinearPhi.step(0.25)
        start = PathConfig.zero(LevelIndex(1, PLUS_HALF))
        law = multivariate_distribution(phi, start)
        # y_1 from T_{1,-}(0, .), then y_2 from T_{1,+}(0, .) Link(., y_1), renormalized
        for y1, p1 in transition_row(1, MINUS_HALF, phi, (0,)).items():
            weights = {y2: v * link_same_N(1, y2, y1)
                       for y2, v in transition_row(1, PLUS_HALF, phi, (0,)).items()
                       if precedes(y1, y2)}
            total = sum(weights.values())
            for y2, w in weights.items():
                assert law[(y1, y2)] == pytest.approx(p1 * w / total)

    def test_step_is_valid(self, rng):
        phi = LinearPhi.step(0.4)
        path = PathConfig.zero(LevelIndex(3, MINUS_HALF))
        for _ in range(20):
            path = multivariate_step(phi, path, rng)
        assert path.to_particles().is_valid()

    def test_propagate_preserves_mass(self):
        start = PathConfig.zero(LevelIndex(1, PLUS_HALF))
        law = propagate(LinearPhi.step(0.2), {start.partitions: 1.0}, 4)
        assert sum(law.values()) == pytest.approx(1.0)

    def test_unreachable_lower_level_raises(self):
        with pytest.raises(ForbiddenTransitionError, match='no admissible move'):
            _conditional(LevelIndex(1, PLUS_HALF), LinearPhi.step(0.25), (0,), (5,))


class TestComposition:

    @pytest.mark.parametrize('a', [MINUS_HALF, PLUS_HALF])
    def test_composed_steps_give_a_beta_character(self, a):
        # (1 + p(x-1))^m is E for m equal beta parameters with beta - beta^2/2 = p
        p, steps = 0.125, 4
        beta = 1.0 - np.sqrt(1.0 - 2.0 * p)
        start = PathConfig.zero(LevelIndex(1, a))
        law = composed_law(p * steps, start, steps)
        top = {}
        for parts, weight in law.items():
            top[parts[-1]] = top.get(parts[-1], 0.0) + weight
        expected = measure_table(CharacterParams((), (beta,) * steps, 0.0), 1, a, steps + 2)
        for lam, value in expected.items():
            assert top.get(lam, 0.0) == pytest.approx(value, abs=1e-12)

    def test_extrapolation_beats_a_single_pass(self):
        t, steps = 0.5, 32
        generator = truncated_generator(1, PLUS_HALF, 10)
        start = PathConfig.zero(LevelIndex(1, PLUS_HALF))
        initial = np.zeros(len(generator.states))
        initial[generator.index_of(start)] = 1.0
        exact = expm_oracle(generator, t, initial).distribution
        raw = total_variation(exact, generator.states, composed_law(t, start, steps))
        extrapolated = total_variation(exact, generator.states,
                                       composed_law(t, start, steps, extrapolate=True))
        assert extrapolated < 1e-3
        assert extrapolated < raw / 4

    def test_total_variation_counts_mass_off_the_states(self):
        states = [PathConfig(((0,),)), PathConfig(((1,),))]
        law = {((0,),): 0.5, ((1,),): 0.25, ((2,),): 0.25}
        assert total_variation(np.array([0.5, 0.5]), states, law) == pytest.approx(0.25)


class TestLinkConsistency:

    @pytest.mark.parametrize('mu', [(0, 0), (2, 1), (3, 0)])
    def test_same_N_link_carries_the_measure_down(self, mu):
        omega = CharacterParams.plancherel(1.0)
        upper = measure_table(omega, 2, PLUS_HALF, 30)
        lower = measure_table(omega, 2, MINUS_HALF, 30)
        carried = sum(p * link_same_N(2, nu, mu) for nu, p in upper.items() if precedes(mu, nu))
        assert carried == pytest.approx(lower[mu], abs=1e-10)

    @pytest.mark.parametrize('kappa', [(0,), (1,), (3,)])
    def test_down_N_link_carries_the_measure_down(self, kappa):
        omega = CharacterParams((0.2,), (0.3,), 0.5)
        upper = measure_table(omega, 2, MINUS_HALF, 40)
        lower = measure_table(omega, 1, PLUS_HALF, 40)
        carried = sum(p * link_down_N(2, nu, kappa) for nu, p in upper.items()
                      if precedes(kappa, nu))
        assert carried == pytest.approx(lower[kappa], abs=1e-9)
