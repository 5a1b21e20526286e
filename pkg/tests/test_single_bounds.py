import itertools

import numpy as np
import pytest

from src.lotto_core.errors import InvalidArgumentError
from src.lotto_core.game_instance import SimplexVector
from src.lotto_core.payoff import gl_equilibrium_value
from src.single_bounds.bounds_report import compute_bounds
from src.single_bounds.lower_bound import (
    alpha_at_level,
    eval_H,
    eval_Hc,
    eval_Hc_vector,
    lower_bound_objective,
    solve_lower_bound,
)
from src.single_bounds.upper_bound import (
    equalized_mass,
    eval_T,
    eval_UB,
    q_of_subset,
    solve_upper_bound,
    ub_closed_form,
)
from src.strategy_lab.strategies import optimal_delta_Y
from tests.conftest import make_instance, random_instance

REFERENCE_BOUNDS = [
    # Y, LB*, UB*, k*
    (0.5, 0.803618, 0.806452, 3),
    (1.0, 0.71875, 0.71875, 2),
    (1.5, 2 / 3, 2 / 3, 1),
]


class TestReferenceInstance:
    @pytest.mark.parametrize("Y, lb, ub, k_star", REFERENCE_BOUNDS)
    def test_bounds(self, Y, lb, ub, k_star):
        inst = make_instance(1.0, Y)
        assert solve_lower_bound(inst).value == pytest.approx(lb, abs=1e-6)
        upper = solve_upper_bound(inst)
        assert upper.value == pytest.approx(ub, abs=1e-6)
        assert upper.k_star == k_star

    def test_equalizing_split_at_unit_budgets(self, reference_instance):
        lower = solve_lower_bound(reference_instance)
        np.testing.assert_allclose(np.asarray(lower.alpha_star), [0.875, 0.125, 0.0], atol=1e-9)
        assert lower.level == pytest.approx(0.28125, abs=1e-9)
        assert lower.iterations > 0

    @pytest.mark.parametrize("X, Y", [(1.0, 2.0), (1.0, 0.5), (2.0, 1.0), (1.0, 1.0), (3.0, 0.7), (0.4, 5.0)])
    def test_single_contest_collapses_to_classic_value(self, X, Y):
        inst = make_instance(X, Y, v=(1.0,))
        gl = gl_equilibrium_value(inst)
        assert solve_lower_bound(inst).value == pytest.approx(gl, abs=1e-12)
        assert solve_upper_bound(inst).value == pytest.approx(gl, abs=1e-12)

    def test_grid_search_agrees_with_lower_bound(self, reference_instance):
        """No split on a 1e-3 simplex grid beats the bisection optimum."""
        steps = np.arange(0, 1001) / 1000
        a1, a2 = np.meshgrid(steps, steps, indexing="ij")
        feasible = a1 + a2 <= 1 + 1e-12
        alphas = np.stack([a1[feasible], a2[feasible], np.clip(1 - a1[feasible] - a2[feasible], 0, None)], axis=1)

        best = 1 - np.min(np.max(eval_Hc_vector(alphas, reference_instance), axis=1))
        lb = solve_lower_bound(reference_instance).value
        assert best <= lb + 1e-9
        assert best >= lb - 1e-3


class TestLowerBoundPieces:
    def test_Hc_branches(self, reference_instance):
        # linear branch below Y / X, hyperbolic above
        assert eval_Hc(0.0, 0, reference_instance) == pytest.approx(0.5)
        assert eval_Hc(0.5, 0, reference_instance) == pytest.approx(0.5 * 0.75)
        assert eval_Hc(1.0, 0, reference_instance) == pytest.approx(0.25)
        inst = reference_instance.with_budgets(Y=0.5)
        assert eval_Hc(1.0, 0, inst) == pytest.approx(0.5 * 0.5 / 2)

    def test_Hc_rejects_negative_share(self, reference_instance):
        with pytest.raises(InvalidArgumentError):
            eval_Hc(-0.1, 0, reference_instance)

    def test_vector_matches_scalar(self, reference_instance, rng):
        for _ in range(20):
            alpha = rng.dirichlet(np.ones(3))
            expected = [eval_Hc(a, c, reference_instance) for c, a in enumerate(alpha)]
            np.testing.assert_allclose(eval_Hc_vector(alpha, reference_instance), expected, rtol=1e-12)

    def test_alpha_at_level_inverts_Hc(self, reference_instance):
        t = 0.2
        alpha = alpha_at_level(t, reference_instance)
        assert alpha[2] == 0.0  # v_3 = 0.2 never exceeds the level
        for c in (0, 1):
            assert eval_Hc(alpha[c], c, reference_instance) == pytest.approx(t, rel=1e-12)

    def test_objective_is_a_lower_bound_everywhere(self, reference_instance, rng):
        lb = solve_lower_bound(reference_instance).value
        for _ in range(100):
            alpha = rng.dirichlet(np.ones(3))
            assert lower_bound_objective(alpha, reference_instance) <= lb + 1e-9
        assert lower_bound_objective([1, 0, 0], reference_instance) == pytest.approx(1 - eval_H([1, 0, 0], reference_instance))

    def test_invalid_tolerance(self, reference_instance):
        with pytest.raises(InvalidArgumentError):
            solve_lower_bound(reference_instance, tol=0)


class TestUpperBoundPieces:
    def test_equalizing_vector(self, reference_instance):
        q = q_of_subset([0, 1], reference_instance)
        np.testing.assert_allclose(np.asarray(q), [0.375, 0.625, 0.0])
        weighted = reference_instance.v * np.asarray(q)
        assert weighted[0] == pytest.approx(weighted[1])
        assert equalized_mass(2, reference_instance) == pytest.approx(weighted[0])

    @pytest.mark.parametrize("subset", [[], [3], [-1, 0]])
    def test_bad_subsets(self, reference_instance, subset):
        with pytest.raises(InvalidArgumentError):
            q_of_subset(subset, reference_instance)

    def test_closed_form_matches_evaluation(self, rng):
        for _ in range(20):
            inst = random_instance(rng, 3)
            for k in range(1, 4):
                assert ub_closed_form(k, inst) == pytest.approx(eval_UB(q_of_subset(range(k), inst), inst), abs=1e-12)

    def test_evaluation_is_continuous_across_branches(self, reference_instance, rng):
        for _ in range(20):
            p = rng.dirichlet(np.ones(3))
            expected_value = reference_instance.v @ p
            # the two branches of eval_UB meet where (Y / X) v.p = max_c v_c p_c
            Y_switch = np.max(reference_instance.v * p) / expected_value
            below = eval_UB(p, reference_instance.with_budgets(Y=Y_switch * (1 - 1e-9)))
            above = eval_UB(p, reference_instance.with_budgets(Y=Y_switch * (1 + 1e-9)))
            assert below == pytest.approx(1 - expected_value / 2, abs=1e-8)
            assert above == pytest.approx(1 - expected_value / 2, abs=1e-8)

    def test_closed_form_rejects_bad_k(self, reference_instance):
        with pytest.raises(InvalidArgumentError):
            ub_closed_form(4, reference_instance)

    def test_optimal_participation_minimizes_T(self, reference_instance, rng):
        deltas = np.linspace(0, 1, 2001)
        for Y in (0.3, 1.0, 2.0):
            inst = reference_instance.with_budgets(Y=Y)
            p = rng.dirichlet(np.ones(3))
            best = optimal_delta_Y(p, inst)
            assert eval_T(best, p, inst) == pytest.approx(eval_UB(p, inst), abs=1e-12)
            assert min(eval_T(d, p, inst) for d in deltas) >= eval_UB(p, inst) - 1e-12

    def test_T_rejects_bad_participation(self, reference_instance):
        with pytest.raises(InvalidArgumentError):
            eval_T(1.5, [1, 0, 0], reference_instance)

    def test_per_k_table(self, reference_instance):
        per_k = solve_upper_bound(reference_instance).per_k
        np.testing.assert_allclose(per_k, [0.75, 0.71875, 1 - 2.5 / (2 + 10 / 3 + 5)], rtol=1e-12)
        with pytest.raises(ValueError):
            per_k[0] = 0.0


class TestTopKStructure:
    def test_top_k_beats_every_other_subset(self, rng):
        """The equalizing point of the top-k contests is never worse than that of another k-subset."""
        for _ in range(100):
            inst = random_instance(rng, int(rng.integers(3, 7)))
            for k in range(1, inst.C + 1):
                top = eval_UB(q_of_subset(range(k), inst), inst)
                for subset in itertools.combinations(range(inst.C), k):
                    assert top <= eval_UB(q_of_subset(subset, inst), inst) + 1e-12

    @pytest.mark.slow
    def test_simplex_grid_never_beats_the_minimum(self, rng):
        steps = np.arange(0, 101)
        for _ in range(20):
            inst = random_instance(rng, 3)
            ub = solve_upper_bound(inst).value
            grid_min = min(
                eval_UB(SimplexVector([i / 100, j / 100, (100 - i - j) / 100]), inst)
                for i in steps
                for j in steps[: 101 - i]
            )
            assert grid_min >= ub - 1e-9
            assert grid_min <= ub + 0.05


class TestBoundsChain:
    def test_random_instances(self, rng):
        for _ in range(100):
            inst = random_instance(rng, int(rng.integers(1, 7)))
            report = compute_bounds(inst)
            assert report.gl - 1e-9 <= report.lb <= report.ub + 1e-9
            assert report.gl == gl_equilibrium_value(inst)
            assert report.gap == pytest.approx(report.ub - report.lb)

    def test_report_uses_caller_order(self):
        inst = make_instance(1.0, 1.0, v=(0.2, 0.5, 0.3))
        report = compute_bounds(inst)
        np.testing.assert_allclose(report.p_star, [0.0, 0.375, 0.625])
        np.testing.assert_allclose(report.alpha_star, [0.0, 0.875, 0.125], atol=1e-9)
        assert report.top_contests == [1, 2]
        assert report.k_star == 2

    def test_text_format_lists_every_field(self, reference_instance):
        text = compute_bounds(reference_instance).format_text()
        for key in ("gl", "lb", "ub", "gap", "k_star", "alpha_star", "p_star"):
            assert key in text
