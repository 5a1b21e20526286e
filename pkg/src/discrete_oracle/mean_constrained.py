"""
Best response of a player whose mixed strategy must respect a budget in expectation.

Maximizing sum_a rho_a u_a over mixtures rho with sum_a rho_a cost_a <= budget is a linear program with a
single moment constraint, so an optimum is a pure strategy or a two-point mixture on the upper concave
envelope of the (cost, utility) points. Only points on the nondecreasing part of the envelope matter:
a point that costs more than another without paying more is never needed.
"""
from dataclasses import dataclass
import logging

import numpy as np

from src.lotto_core.errors import InvalidArgumentError

log = logging.getLogger(__name__)

# relative tolerance for "affordable" and for preferring a pure strategy over an equally good mixture
_BUDGET_EPS = 1e-12


@dataclass(frozen=True)
class BestResponse:
    value: float
    mixture: tuple  # ((pure index, weight), ...) with one or two entries

    @property
    def support(self) -> list:
        return [index for index, _ in self.mixture]

    def expected(self, values) -> float:
        """Mixture average of a per-pure-strategy quantity, e.g. the costs."""
        values = np.asarray(values)
        return float(sum(weight * values[index] for index, weight in self.mixture))


@dataclass(frozen=True)
class CostLevels:
    """
    Pure strategies grouped by distinct cost.

    Precomputing the grouping once lets repeated best responses over a large fixed grid
    reduce each utility vector to one maximum per cost level in linear time.
    """

    order: np.ndarray  # pure indices sorted by cost
    starts: np.ndarray  # offset in `order` where each cost level begins
    costs: np.ndarray  # distinct costs, ascending

    @classmethod
    def from_costs(cls, costs, decimals: int = 12) -> "CostLevels":
        costs = np.asarray(costs, dtype=float)
        if costs.size == 0:
            raise InvalidArgumentError("cannot build cost levels of an empty grid")
        rounded = np.round(costs, decimals)
        order = np.argsort(rounded, kind="stable")
        distinct, starts = np.unique(rounded[order], return_index=True)
        return cls(order=order, starts=starts, costs=distinct)

    @property
    def num_pure(self) -> int:
        return int(self.order.size)

    def level_maxima(self, utilities: np.ndarray) -> np.ndarray:
        return np.maximum.reduceat(utilities[self.order], self.starts)

    def argmax_in_level(self, utilities: np.ndarray, level: int) -> int:
        stop = self.starts[level + 1] if level + 1 < self.starts.size else self.order.size
        members = self.order[self.starts[level]:stop]
        return int(members[np.argmax(utilities[members])])


def _envelope_response(level_costs, level_utilities, budget):
    """Best (value, low level, high level, weight on high) over pure levels and two-point mixtures."""
    affordable = np.flatnonzero(level_costs <= budget + _BUDGET_EPS * max(1.0, abs(budget)))

    # record-setting affordable levels: strictly better than every cheaper level
    running_max = np.maximum.accumulate(level_utilities[affordable])
    is_record = np.r_[True, level_utilities[affordable][1:] > running_max[:-1]]
    low = affordable[is_record]

    best_low = low[-1]
    best_value = float(level_utilities[best_low])

    high = np.arange(affordable[-1] + 1, level_costs.size)
    high = high[level_utilities[high] > best_value]
    if high.size == 0:
        return best_value, best_low, None, 0.0

    low_costs = level_costs[low][:, None]
    low_utils = level_utilities[low][:, None]
    weights = (budget - low_costs) / (level_costs[high][None, :] - low_costs)
    values = low_utils + weights * (level_utilities[high][None, :] - low_utils)

    i, j = np.unravel_index(np.argmax(values), values.shape)
    if values[i, j] <= best_value + 1e-15:
        return best_value, best_low, None, 0.0
    return float(values[i, j]), low[i], high[j], float(weights[i, j])


def mean_constrained_best_response(utilities, costs, budget: float, levels: CostLevels = None) -> BestResponse:
    """
    Exact best response over mixtures whose expected cost is at most `budget`.

    Parameters
    ----------
    utilities: array of shape (n,)
        Payoff of each pure strategy to the responding player.
    costs: array of shape (n,)
        Resource cost of each pure strategy.
    budget: float
        Bound on the expected cost of the mixture; must cover the cheapest pure strategy.
    levels: CostLevels, optional
        Precomputed grouping of `costs`, reused across calls on the same grid.

    Returns
    -------
    BestResponse with the optimal value and a mixture over at most two pure strategies.
    """
    utilities = np.asarray(utilities, dtype=float)
    costs = np.asarray(costs, dtype=float)
    if utilities.size == 0:
        raise InvalidArgumentError("best response over an empty set of pure strategies")
    if utilities.shape != costs.shape:
        raise InvalidArgumentError(f"utilities {utilities.shape} and costs {costs.shape} must match")

    if levels is None:
        levels = CostLevels.from_costs(costs)
    if budget < levels.costs[0] - _BUDGET_EPS * max(1.0, abs(budget)):
        raise InvalidArgumentError(
            f"budget {budget} is below the cheapest pure strategy (cost {levels.costs[0]})"
        )

    level_utilities = levels.level_maxima(utilities)
    value, low, high, weight = _envelope_response(levels.costs, level_utilities, budget)

    low_index = levels.argmax_in_level(utilities, low)
    if high is None:
        return BestResponse(value=value, mixture=((low_index, 1.0),))

    high_index = levels.argmax_in_level(utilities, high)
    return BestResponse(value=value, mixture=((low_index, 1.0 - weight), (high_index, weight)))
