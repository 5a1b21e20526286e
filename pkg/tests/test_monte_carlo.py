import numpy as np
import pytest

from src.lotto_core.errors import InvalidArgumentError
from src.single_bounds.lower_bound import solve_lower_bound
from src.single_bounds.upper_bound import solve_upper_bound
from src.strategy_lab.best_responses import exact_pair_payoff
from src.strategy_lab.monte_carlo import BLOCK_SIZE, block_generator, monte_carlo_payoff, sample_payoffs
from src.strategy_lab.strategies import XHatStrategy, YHatStrategy, marginal_ks_distance
from tests.conftest import make_instance


@pytest.fixture
def pair_at_y_1_5():
    inst = make_instance(1.0, 1.5)
    fx = XHatStrategy.optimal(solve_lower_bound(inst).alpha_star, inst)
    fy = YHatStrategy.optimal(solve_upper_bound(inst).p_star, inst)
    return inst, fx, fy


class TestMonteCarloPayoff:
    def test_nobody_shows_up(self, reference_instance):
        fx = XHatStrategy(alpha=[0.5, 0.3, 0.2], delta=[0.0, 0.0, 0.0], inst=reference_instance)
        fy = YHatStrategy(p=[0.5, 0.3, 0.2], delta_y=0.0, inst=reference_instance)
        result = monte_carlo_payoff(fx, fy, n=5000, seed=1)
        assert result.estimate == 1.0
        assert result.std_error == 0.0

    def test_same_seed_same_estimate(self, pair_at_y_1_5):
        _, fx, fy = pair_at_y_1_5
        first = monte_carlo_payoff(fx, fy, n=20000, seed=7)
        second = monte_carlo_payoff(fx, fy, n=20000, seed=7)
        assert first == second
        assert monte_carlo_payoff(fx, fy, n=20000, seed=8).estimate != first.estimate

    def test_worker_count_does_not_matter(self, pair_at_y_1_5):
        _, fx, fy = pair_at_y_1_5
        n = 3 * BLOCK_SIZE + 123
        serial = monte_carlo_payoff(fx, fy, n=n, seed=3)
        parallel = monte_carlo_payoff(fx, fy, n=n, seed=3, num_workers=2)
        assert serial == parallel
        assert serial.n == n

    def test_blocks_match_a_manual_merge(self, pair_at_y_1_5):
        _, fx, fy = pair_at_y_1_5
        n = BLOCK_SIZE + 10
        payoffs = np.concatenate(
            [sample_payoffs(fx, fy, BLOCK_SIZE, block_generator(4, 0)), sample_payoffs(fx, fy, 10, block_generator(4, 1))]
        )
        result = monte_carlo_payoff(fx, fy, n=n, seed=4)
        assert result.estimate == pytest.approx(payoffs.mean(), abs=1e-12)
        assert result.std_error == pytest.approx(payoffs.std(ddof=1) / np.sqrt(n), rel=1e-9)

    def test_single_sample(self, pair_at_y_1_5):
        _, fx, fy = pair_at_y_1_5
        result = monte_carlo_payoff(fx, fy, n=1, seed=7)
        assert result.std_error == 0.5
        assert result.estimate in (0.5, 1.0)

    def test_needs_a_sample(self, pair_at_y_1_5):
        _, fx, fy = pair_at_y_1_5
        with pytest.raises(InvalidArgumentError):
            monte_carlo_payoff(fx, fy, n=0, seed=7)

    def test_agrees_with_exact_payoff(self, reference_instance):
        fx = XHatStrategy.optimal([0.5, 0.3, 0.2], reference_instance)
        fy = YHatStrategy(p=[0.2, 0.3, 0.5], delta_y=0.6, inst=reference_instance)
        result = monte_carlo_payoff(fx, fy, n=200000, seed=11)
        assert abs(result.estimate - exact_pair_payoff(fx, fy)) <= 4 * result.std_error

    @pytest.mark.slow
    def test_optimal_pair_million_samples(self, pair_at_y_1_5):
        inst, fx, fy = pair_at_y_1_5
        result = monte_carlo_payoff(fx, fy, n=10**6, seed=7)
        assert abs(result.estimate - 2 / 3) <= 3 * result.std_error
        assert result.std_error == pytest.approx(np.sqrt(2 / 9 * 0.25 / 10**6), rel=0.05)
        assert solve_lower_bound(inst).value - 3 * result.std_error <= result.estimate
        assert result.estimate <= solve_upper_bound(inst).value + 3 * result.std_error


class TestSamplerStatistics:
    def test_marginals_match_their_cdf(self, reference_instance):
        fx = XHatStrategy.optimal([0.6, 0.3, 0.1], reference_instance.with_budgets(Y=0.8))
        samples = fx.sample_batch(10**5, 17)
        for c in range(3):
            assert marginal_ks_distance(samples[:, c], fx, c) <= 0.01

    def test_wrong_cdf_is_detected(self, reference_instance):
        fx = XHatStrategy.optimal([0.6, 0.3, 0.1], reference_instance)
        other = XHatStrategy.optimal([0.3, 0.6, 0.1], reference_instance)
        samples = fx.sample_batch(10**5, 17)
        assert marginal_ks_distance(samples[:, 0], other, 0) > 0.1

    @pytest.mark.slow
    def test_budgets_hold_in_expectation(self, reference_instance):
        n = 10**6
        fx = XHatStrategy.optimal([0.5, 0.3, 0.2], reference_instance.with_budgets(Y=1.5))
        totals = fx.sample_batch(n, 21).sum(axis=1)
        assert abs(totals.mean() - 1.0) <= 4 * totals.std(ddof=1) / np.sqrt(n)

        fy = YHatStrategy(p=[0.5, 0.3, 0.2], delta_y=0.6, inst=reference_instance)
        contests, amounts = fy.sample_batch(n, 22)
        assert abs(amounts.mean() - reference_instance.Y) <= 4 * amounts.std(ddof=1) / np.sqrt(n)

    @pytest.mark.slow
    def test_contest_frequencies(self, reference_instance):
        n = 10**6
        p = np.array([0.5, 0.3, 0.2])
        fy = YHatStrategy(p=p, delta_y=1.0, inst=reference_instance)
        contests, _ = fy.sample_batch(n, 23)
        frequencies = np.bincount(contests, minlength=3) / n
        assert np.all(np.abs(frequencies - p) <= 4 * np.sqrt(p * (1 - p) / n))
