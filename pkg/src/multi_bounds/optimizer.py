"""
Multi-start Nelder-Mead search for the K-contest bounds.

Simplex variables are the softmax of unconstrained coordinates and delta is a clamped tanh of one
coordinate, so every iterate is feasible and its objective is a certified bound. The best restart wins,
ties going to the lower restart index.
"""
import logging

import numpy as np
from scipy.optimize import minimize
from scipy.special import softmax
from tqdm import tqdm

from src.lotto_core.errors import InvalidArgumentError
from src.lotto_core.game_instance import GameInstance
from src.multi_bounds.k_contest import KLowerVars, KUpperVars, enumerate_subsets, lower_K_value, upper_K_value
from src.single_bounds.upper_bound import q_of_subset, solve_upper_bound
from src.strategy_lab.strategies import as_generator

log = logging.getLogger(__name__)

NM_MAX_ITER = 2000
NM_TOL = 1e-10
DELTA_MARGIN = 0.05  # tanh is stretched past [0, 1] by this much and clipped, so delta = 0 and 1 are reachable
ZERO_LOGIT = -30.0


def delta_from_coordinate(z: float) -> float:
    stretched = (1 + np.tanh(z)) / 2 * (1 + 2 * DELTA_MARGIN) - DELTA_MARGIN
    return float(np.clip(stretched, 0.0, 1.0))


def coordinate_from_delta(delta: float) -> float:
    # endpoints map well inside the clipped region
    if delta >= 1:
        return 3.0
    if delta <= 0:
        return -3.0
    inner = 2 * (delta + DELTA_MARGIN) / (1 + 2 * DELTA_MARGIN) - 1
    return float(np.arctanh(np.clip(inner, -0.999999, 0.999999)))


def _logits(weights) -> np.ndarray:
    weights = np.asarray(weights, dtype=float)
    return np.where(weights > 0, np.log(np.where(weights > 0, weights, 1.0)), ZERO_LOGIT)


def _nelder_mead(objective, x0: np.ndarray):
    return minimize(
        objective, x0, method="Nelder-Mead", options={"maxiter": NM_MAX_ITER, "xatol": NM_TOL, "fatol": NM_TOL}
    )


def _check_restarts(restarts: int) -> None:
    if restarts < 1:
        raise InvalidArgumentError(f"number of restarts must be at least 1, got {restarts}")


def optimize_lower_K(inst: GameInstance, K: int, restarts: int = 50, seed: int = 0, show_progress: bool = False):
    """
    Maximize eval_lower_K over (alpha, delta).

    Restart 0 starts at alpha = v, delta = min(X / Y, 1), which already attains the classic value;
    the others at Dirichlet(1) alphas with uniform deltas.
    The point delta = 0, worth one minus the top-K value, is always a candidate.

    Returns
    -------
    (value, KLowerVars)
    """
    _check_restarts(restarts)
    _, membership = enumerate_subsets(inst.C, K)
    rng = as_generator(seed)

    def unpack(z):
        return softmax(z[:-1]), delta_from_coordinate(z[-1])

    def objective(z):
        alpha, delta = unpack(z)
        return -lower_K_value(alpha, delta, membership, inst)

    best_value, best_point = lower_K_value(np.asarray(inst.v), 0.0, membership, inst), (np.asarray(inst.v), 0.0)
    best_restart = None
    for restart in tqdm(range(restarts), disable=not show_progress):
        if restart == 0:
            x0 = np.r_[_logits(inst.v), coordinate_from_delta(min(inst.X / inst.Y, 1.0))]
        else:
            x0 = np.r_[_logits(rng.dirichlet(np.ones(inst.C))), coordinate_from_delta(rng.random())]

        result = _nelder_mead(objective, x0)
        value = -float(result.fun)
        log.debug(f"lower K={K} restart {restart}: {value:.9f} ({result.nit} iterations)")
        if value > best_value:
            best_value, best_point, best_restart = value, unpack(result.x), restart

    log.info(f"lower bound for K={K}: {best_value:.9f} (restart {best_restart if best_restart is not None else 'delta=0'})")
    alpha, delta = best_point
    return best_value, KLowerVars(alpha=alpha / alpha.sum(), delta=delta, K=K)


def optimize_upper_K(inst: GameInstance, K: int, restarts: int = 50, seed: int = 0, show_progress: bool = False):
    """
    Minimize eval_upper_K over (p, beta).

    For K = 1 restart 0 starts at the equalizing point of the best top-k set; for K >= 2 at uniform weights.
    The remaining restarts draw p and every beta row from Dirichlet(1).

    Returns
    -------
    (value, KUpperVars)
    """
    _check_restarts(restarts)
    subsets, membership = enumerate_subsets(inst.C, K)
    num_subsets = len(subsets)
    member_columns = [list(subset) for subset in subsets]
    rng = as_generator(seed)

    def unpack(z):
        p = softmax(z[:num_subsets])
        beta = np.zeros((num_subsets, inst.C))
        if K == 1:
            beta[:] = membership
        else:
            for row, columns in enumerate(member_columns):
                start = num_subsets + row * K
                beta[row, columns] = softmax(z[start:start + K])
        return p, beta

    def objective(z):
        p, beta = unpack(z)
        return upper_K_value(p, beta, membership, inst)

    beta_dims = 0 if K == 1 else num_subsets * K
    best_value, best_point = np.inf, None
    for restart in tqdm(range(restarts), disable=not show_progress):
        if restart == 0:
            if K == 1:
                k_star = solve_upper_bound(inst).k_star
                x0 = _logits(q_of_subset(range(k_star), inst))
            else:
                x0 = np.zeros(num_subsets + beta_dims)
        else:
            p0 = _logits(rng.dirichlet(np.ones(num_subsets)))
            beta0 = [_logits(rng.dirichlet(np.ones(K))) for _ in range(num_subsets)] if K > 1 else []
            x0 = np.concatenate([p0, *beta0])

        result = _nelder_mead(objective, x0)
        value = float(result.fun)
        log.debug(f"upper K={K} restart {restart}: {value:.9f} ({result.nit} iterations)")
        if value < best_value:
            best_value, best_point = value, unpack(result.x)

    log.info(f"upper bound for K={K}: {best_value:.9f}")
    p, beta = best_point
    return best_value, KUpperVars(p=p / p.sum(), beta=beta / beta.sum(axis=1, keepdims=True), K=K, subsets=subsets)
