"""
Simultaneous fictitious play on a DiscreteGame.

Both players best-respond, under their mean-budget constraint, to the opponent's empirical mixture.
X's best-response value against Y's average is an upper bound on the discrete game value, and
X's guarantee with its own average (one minus Y's best-response value) is a lower bound, so the
reported interval always brackets the value of the discretized game.
"""
from dataclasses import dataclass
import logging

import numpy as np
from tqdm import tqdm

from src.discrete_oracle.discrete_game import DiscreteGame
from src.discrete_oracle.mean_constrained import BestResponse, mean_constrained_best_response
from src.lotto_core.errors import InvalidArgumentError, SolverError
from src.lotto_core.game_instance import GameInstance
from src.strategy_lab.strategies import as_generator

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class OracleResult:
    maxmin: float  # best certified lower estimate
    minmax: float  # best certified upper estimate
    duality_gap: float
    iterations: int
    grid_step: float
    cap: float

    def to_dict(self) -> dict:
        return {
            "maxmin": self.maxmin,
            "minmax": self.minmax,
            "duality_gap": self.duality_gap,
            "iterations": self.iterations,
            "grid_step": self.grid_step,
            "cap": self.cap,
        }


def _accumulate(target: np.ndarray, response: BestResponse, columns) -> None:
    for index, weight in response.mixture:
        target += weight * columns(index)


def fictitious_play(
    game: DiscreteGame, inst: GameInstance, iters: int = 20000, seed: int = 0, show_progress: bool = False
) -> OracleResult:
    """
    Run `iters` rounds and return the tightest bounds seen.

    The seed only picks Y's opening pure strategy among those within Y's budget, so every average
    mixture Y plays respects the mean constraint. Each round costs O(nX + nY) since the
    opponent-average payoffs are updated incrementally.

    Raises SolverError if the lower estimate ends above the upper one.
    """
    if iters < 1:
        raise InvalidArgumentError(f"number of iterations must be at least 1, got {iters}")

    A = game.matrix
    x_levels, y_levels = game.x_levels(), game.y_levels()
    rng = as_generator(seed)

    affordable = np.flatnonzero(game.y_costs <= inst.Y * (1 + 1e-12))
    opening = int(affordable[rng.integers(affordable.size)])
    log.debug(f"Fictitious play opens with Y strategy {opening} (cost {game.y_costs[opening]:g})")

    # running sums of A @ sigma_Y and A.T @ sigma_X over the played mixtures
    x_payoff_sum = A[:, opening].copy()
    y_payoff_sum = np.zeros(A.shape[1])
    rounds_y = 1

    best_lower, best_upper = -np.inf, np.inf
    next_report = 1
    for iteration in tqdm(range(1, iters + 1), disable=not show_progress):
        x_response = mean_constrained_best_response(x_payoff_sum / rounds_y, game.x_costs, inst.X, x_levels)
        best_upper = min(best_upper, x_response.value)
        _accumulate(y_payoff_sum, x_response, lambda a: A[a, :])

        y_utilities = 1.0 - y_payoff_sum / iteration
        y_response = mean_constrained_best_response(y_utilities, game.y_costs, inst.Y, y_levels)
        best_lower = max(best_lower, 1.0 - y_response.value)
        _accumulate(x_payoff_sum, y_response, lambda b: A[:, b])
        rounds_y += 1

        if iteration == next_report or iteration == iters:
            log.info(
                f"Fictitious play iteration {iteration}: lower {best_lower:.6f}, upper {best_upper:.6f}, "
                f"gap {best_upper - best_lower:.6f}"
            )
            if iteration == next_report:
                next_report *= 10

    if best_lower > best_upper + 1e-9:
        # both are certified bounds of the same value
        raise SolverError(f"fictitious play bounds crossed: lower {best_lower} > upper {best_upper}")

    return OracleResult(
        maxmin=float(best_lower),
        minmax=float(best_upper),
        duality_gap=float(best_upper - best_lower),
        iterations=iters,
        grid_step=game.grid_step,
        cap=game.cap,
    )
