"""
Finite version of the restricted game used as an independent oracle for the analytic bounds.

X's pure strategies are lattice allocations {0, h, 2h, ..., cap}^C (sparsified for three contests),
Y's are single-contest attacks on the amount lattice shifted by h / 2, plus the zero allocation.
The budgets stay constraints on the mean of each mixed strategy.
"""
from dataclasses import dataclass
import itertools
import logging

import numpy as np

from src.discrete_oracle.mean_constrained import CostLevels
from src.lotto_core.constants import MAX_CONTESTS_FOR_ORACLE, MAX_ORACLE_ENTRIES
from src.lotto_core.errors import InvalidArgumentError, UnsupportedSizeError
from src.lotto_core.game_instance import GameInstance
from src.lotto_core.payoff import payoff_pure
from src.single_bounds.upper_bound import q_of_subset

log = logging.getLogger(__name__)

GRID_FACTOR = 0.05  # h = GRID_FACTOR * min(X, Y, 1)
CAP_FACTOR = 4  # cap = CAP_FACTOR * max(X, Y)


@dataclass(frozen=True)
class DiscreteGame:
    inst: GameInstance
    x_grid: np.ndarray  # (nX, C)
    y_grid: np.ndarray  # (nY, C)
    x_costs: np.ndarray
    y_costs: np.ndarray
    matrix: np.ndarray  # (nX, nY) payoff to X
    grid_step: float
    cap: float
    restricted_y: bool = True

    @property
    def shape(self) -> tuple:
        return self.matrix.shape

    def payoff(self, a: int, b: int) -> float:
        return payoff_pure(self.x_grid[a], self.y_grid[b], self.inst)

    def x_levels(self) -> CostLevels:
        return CostLevels.from_costs(self.x_costs)

    def y_levels(self) -> CostLevels:
        return CostLevels.from_costs(self.y_costs)


def default_grid_step(inst: GameInstance) -> float:
    return GRID_FACTOR * min(inst.X, inst.Y, 1.0)


def default_cap(inst: GameInstance) -> float:
    return CAP_FACTOR * max(inst.X, inst.Y)


def _amounts(step: float, cap: float, offset: float = 0.0) -> np.ndarray:
    """Positive lattice amounts offset + j * step not exceeding cap."""
    count = int(np.floor((cap - offset) / step + 1e-9))
    start = 0 if offset > 0 else 1
    return offset + step * np.arange(start, count + 1)


def _lattice(positive: np.ndarray, num_contests: int, q_ray: np.ndarray = None) -> np.ndarray:
    """
    All allocations with entries in {0} and `positive`.

    With three contests only allocations with at most two positive entries are kept, plus the ray of
    totals s * q_ray along the positive lattice.
    """
    values = np.r_[0.0, positive]
    if num_contests <= 2:
        return np.array(list(itertools.product(values, repeat=num_contests)), dtype=float).reshape(-1, num_contests)

    points = [np.zeros((1, num_contests))]
    for pair in itertools.combinations(range(num_contests), 2):
        block = np.zeros((values.size**2, num_contests))
        block[:, list(pair)] = np.array(list(itertools.product(values, repeat=2)))
        points.append(block)
    if q_ray is not None:
        points.append(positive[:, None] * q_ray[None, :])
    return np.unique(np.vstack(points), axis=0)


def _single_contest_attacks(amounts: np.ndarray, num_contests: int) -> np.ndarray:
    attacks = np.zeros((1 + num_contests * amounts.size, num_contests))
    for c in range(num_contests):
        attacks[1 + c * amounts.size: 1 + (c + 1) * amounts.size, c] = amounts
    return attacks


def payoff_matrix(x_grid: np.ndarray, y_grid: np.ndarray, v: np.ndarray) -> np.ndarray:
    """A[a, b] = sum of v_c over contests where x_a[c] >= y_b[c]."""
    lost = np.zeros((x_grid.shape[0], y_grid.shape[0]))
    for c in range(v.size):
        lost += v[c] * (x_grid[:, c, None] < y_grid[None, :, c])
    return 1.0 - lost


def build_discrete_game(
    inst: GameInstance, grid_step: float = None, cap: float = None, restricted_y: bool = True
) -> DiscreteGame:
    """
    Discretize the instance.

    restricted_y=False gives Y the full shifted lattice (unrestricted General Lotto), whose value should
    approach the classic one.
    """
    if inst.C > MAX_CONTESTS_FOR_ORACLE:
        raise UnsupportedSizeError(f"the discretized oracle supports at most {MAX_CONTESTS_FOR_ORACLE} contests, got {inst.C}")

    grid_step = default_grid_step(inst) if grid_step is None else float(grid_step)
    cap = default_cap(inst) if cap is None else float(cap)
    if grid_step <= 0 or cap < grid_step:
        raise InvalidArgumentError(f"need 0 < grid step <= cap, got step {grid_step} and cap {cap}")

    q_ray = np.asarray(q_of_subset(range(inst.C), inst))
    x_grid = _lattice(_amounts(grid_step, cap), inst.C, q_ray)

    y_amounts = _amounts(grid_step, cap, offset=grid_step / 2)
    if restricted_y:
        y_grid = _single_contest_attacks(y_amounts, inst.C)
    else:
        y_grid = _lattice(y_amounts, inst.C, q_ray)

    entries = x_grid.shape[0] * y_grid.shape[0]
    if entries > MAX_ORACLE_ENTRIES:
        raise UnsupportedSizeError(
            f"payoff matrix {x_grid.shape[0]} x {y_grid.shape[0]} exceeds {MAX_ORACLE_ENTRIES} entries; coarsen the grid"
        )

    log.info(
        f"Discrete game: {x_grid.shape[0]} X strategies, {y_grid.shape[0]} Y strategies, "
        f"step {grid_step:g}, cap {cap:g}, Y amounts offset by step / 2"
    )
    return DiscreteGame(
        inst=inst,
        x_grid=x_grid,
        y_grid=y_grid,
        x_costs=x_grid.sum(axis=1),
        y_costs=y_grid.sum(axis=1),
        matrix=payoff_matrix(x_grid, y_grid, inst.v),
        grid_step=grid_step,
        cap=cap,
        restricted_y=restricted_y,
    )
