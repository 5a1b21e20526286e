"""
Lower bound on the max-min value of the single-contest restricted game.

X splits its budget with fractions alpha over the contests. Against single-contest attacks,
contest c concedes at most H_c(alpha_c), so X guarantees 1 - max_c H_c(alpha_c).
The best split equalizes H_c over the contests that can bind the max; since every H_c is continuous
and strictly decreasing, it is found by bisection on the common level t.
"""
from dataclasses import dataclass
import logging

import numpy as np
from scipy import optimize

from src.lotto_core.constants import BISECTION_MAX_ITER, BISECTION_TOL
from src.lotto_core.errors import InvalidArgumentError, SolverError
from src.lotto_core.game_instance import GameInstance, SimplexVector

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class LowerBoundResult:
    value: float  # LB* = 1 - level
    alpha_star: SimplexVector
    level: float  # equalized level t = H(alpha*)
    iterations: int = 0


def eval_Hc(alpha_c: float, c: int, inst: GameInstance) -> float:
    if alpha_c < 0:
        raise InvalidArgumentError(f"alpha_c must be nonnegative, got {alpha_c}")

    v_c = inst.v[c]
    if alpha_c < inst.Y / inst.X:
        return float(v_c * (1 - alpha_c * inst.X / (2 * inst.Y)))
    return float(v_c * inst.Y / (2 * alpha_c * inst.X))


def eval_Hc_vector(alpha, inst: GameInstance) -> np.ndarray:
    """All H_c(alpha_c) at once."""
    alpha = np.asarray(alpha, dtype=float)
    linear = alpha < inst.Y / inst.X

    # np.where evaluates both branches; keep the hyperbolic one finite at alpha_c = 0
    safe_alpha = np.where(linear, 1.0, alpha)
    return np.where(
        linear,
        inst.v * (1 - alpha * inst.X / (2 * inst.Y)),
        inst.v * inst.Y / (2 * safe_alpha * inst.X),
    )


def eval_H(alpha, inst: GameInstance) -> float:
    return float(np.max(eval_Hc_vector(np.asarray(SimplexVector.coerce(alpha)), inst)))


def lower_bound_objective(alpha, inst: GameInstance) -> float:
    """1 - H(alpha), a valid lower bound for every alpha on the simplex."""
    return 1.0 - eval_H(alpha, inst)


def alpha_at_level(t: float, inst: GameInstance) -> np.ndarray:
    """
    Budget fractions that bring every contest down to level t.

    Contests with v_c <= t are inactive (H_c(0) = v_c never exceeds t) and get nothing.
    Above v_c / 2 the inverse lies on the linear branch, below it on the hyperbolic branch.
    """
    v = inst.v
    alpha = np.zeros_like(v)
    active = t < v
    linear = active & (t > v / 2)
    hyperbolic = active & ~linear

    alpha[linear] = (1 - t / v[linear]) * 2 * inst.Y / inst.X
    alpha[hyperbolic] = v[hyperbolic] * inst.Y / (2 * t * inst.X)
    return alpha


def solve_lower_bound(inst: GameInstance, tol: float = BISECTION_TOL) -> LowerBoundResult:
    if tol <= 0:
        raise InvalidArgumentError(f"tol must be positive, got {tol}")

    def excess_budget(t):
        return alpha_at_level(t, inst).sum() - 1.0

    # at t -> 0 the top contest alone needs an unbounded share, at t = v_1 nobody needs anything
    t_high = float(inst.v[0])
    t_low = t_high * 1e-12
    try:
        t_star, info = optimize.bisect(
            excess_budget,
            t_low,
            t_high,
            xtol=tol,
            maxiter=BISECTION_MAX_ITER,
            full_output=True,
        )
    except ValueError as e:
        raise SolverError(f"level bisection could not bracket the root for {inst}: {e}") from e
    except RuntimeError as e:
        raise SolverError(f"level bisection did not converge in {BISECTION_MAX_ITER} iterations: {e}") from e

    log.debug(f"Level bisection: t = {t_star:.3e} after {info.iterations} iterations.")

    alpha = alpha_at_level(t_star, inst)
    alpha = alpha / alpha.sum()
    level = eval_H(alpha, inst)

    return LowerBoundResult(
        value=1.0 - level,
        alpha_star=SimplexVector(alpha),
        level=level,
        iterations=int(info.iterations),
    )
