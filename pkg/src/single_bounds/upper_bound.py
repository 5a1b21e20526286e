"""
Upper bound on the min-max value of the single-contest restricted game.

Y picks contest c with probability p_c and, when it participates, attacks it with a uniform amount.
UB(p) is X's best payoff against the best participation probability for p. Its minimum over the
simplex is attained at one of the equalizing points q([k]) of the top-k contests, so the bound is
an explicit minimum over k = 1..C.
"""
from dataclasses import dataclass

import numpy as np

from src.lotto_core.errors import InvalidArgumentError
from src.lotto_core.game_instance import GameInstance, SimplexVector


@dataclass(frozen=True)
class UpperBoundResult:
    value: float  # UB*
    k_star: int  # number of top contests Y attacks
    p_star: SimplexVector  # q([k*])
    per_k: np.ndarray  # UB(q([k])) for k = 1..C


def _as_subset(S, inst: GameInstance) -> np.ndarray:
    subset = np.unique(np.asarray(list(S), dtype=np.int64))
    if subset.size == 0:
        raise InvalidArgumentError("subset of contests must not be empty")
    if subset[0] < 0 or subset[-1] >= inst.C:
        raise InvalidArgumentError(f"subset {subset.tolist()} has contests outside 0..{inst.C - 1}")
    return subset


def q_of_subset(S, inst: GameInstance) -> SimplexVector:
    """
    Equalizing vector of subset S: supported on S with v_c q_c constant over S.

    The product form prod_{j in S minus c} v_j / sum_l prod_{j in S minus l} v_j reduces to
    q_c proportional to 1 / v_c, which avoids large products.
    """
    subset = _as_subset(S, inst)
    reciprocals = 1.0 / inst.v[subset]

    q = np.zeros(inst.C)
    q[subset] = reciprocals / reciprocals.sum()
    return SimplexVector(q)


def equalized_mass(k: int, inst: GameInstance) -> float:
    """R = prod_{[k]} v / sum_l prod_{[k] minus l} v = 1 / sum_{c in [k]} 1 / v_c, the common v_c q_c on [k]."""
    return float(1.0 / np.sum(1.0 / inst.v[:k]))


def eval_UB(p, inst: GameInstance) -> float:
    p = np.asarray(SimplexVector.coerce(p))
    if p.size != inst.C:
        raise InvalidArgumentError(f"p must have {inst.C} entries, got {p.size}")

    expected_value = float(inst.v @ p)
    max_weighted = float(np.max(inst.v * p))

    if inst.Y / inst.X * expected_value <= max_weighted:
        return 1 - inst.Y / (2 * inst.X) * expected_value**2 / max_weighted
    return 1 - expected_value + inst.X / (2 * inst.Y) * max_weighted


def eval_T(delta_y: float, p, inst: GameInstance) -> float:
    """
    X's best payoff bound against Y with participation probability delta_y and selection p,
    before optimizing delta_y: 1 - delta_y v.p + delta_y^2 (X / 2Y) max_c v_c p_c.
    """
    if not 0 <= delta_y <= 1:
        raise InvalidArgumentError(f"delta_y must lie in [0, 1], got {delta_y}")
    p = np.asarray(SimplexVector.coerce(p))
    return float(1 - delta_y * (inst.v @ p) + delta_y**2 * inst.X / (2 * inst.Y) * np.max(inst.v * p))


def ub_closed_form(k: int, inst: GameInstance) -> float:
    if not 1 <= k <= inst.C:
        raise InvalidArgumentError(f"k must lie in 1..{inst.C}, got {k}")

    R = equalized_mass(k, inst)
    if k * inst.Y <= inst.X:
        return 1 - k**2 / 2 * inst.Y / inst.X * R
    return 1 - (k - inst.X / (2 * inst.Y)) * R


def solve_upper_bound(inst: GameInstance) -> UpperBoundResult:
    per_k = np.array([ub_closed_form(k, inst) for k in range(1, inst.C + 1)])

    # ties go to the smaller k (fewer contests attacked)
    k_index = int(np.flatnonzero(per_k <= per_k.min() + 1e-15)[0])
    per_k.setflags(write=False)

    return UpperBoundResult(
        value=float(per_k[k_index]),
        k_star=k_index + 1,
        p_star=q_of_subset(range(k_index + 1), inst),
        per_k=per_k,
    )
