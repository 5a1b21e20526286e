"""
Exact payoffs and best responses against the two strategy families.

All payoffs are to player X. Against a single-contest opponent the payoff decomposes contest by contest,
so only the marginals of X's allocation enter.
"""
import logging

import numpy as np

from src.discrete_oracle.mean_constrained import mean_constrained_best_response
from src.lotto_core.errors import InvalidArgumentError
from src.lotto_core.game_instance import Allocation, GameInstance
from src.strategy_lab.strategies import XHatStrategy, YHatStrategy

log = logging.getLogger(__name__)


def expected_payoff_pureX_vs_Yhat(x, strat: YHatStrategy) -> float:
    """sum_c v_c [(1 - p_c delta_y) + p_c delta_y min(delta_y x_c / 2Y, 1)] for a fixed allocation x."""
    x = np.asarray(Allocation.coerce(x))
    inst = strat.inst
    if x.size != inst.C:
        raise InvalidArgumentError(f"allocation must have {inst.C} entries, got {x.size}")

    attacked = strat.p.entries * strat.delta_y
    if strat.delta_y == 0:
        return float(inst.v.sum())
    held = np.minimum(strat.delta_y * x / (2 * inst.Y), 1.0)
    return float(np.sum(inst.v * ((1 - attacked) + attacked * held)))


def best_response_X_payoff(strat: YHatStrategy, inst: GameInstance, budget: float = None):
    """
    X's best pure allocation against Y-hat, by greedy filling.

    Every contest pays a constant rate v_c p_c delta_y^2 / 2Y per unit up to the cap 2Y / delta_y, so filling
    caps in decreasing rate order is optimal. `budget` overrides X's budget (e.g. 0).

    Returns
    -------
    (payoff, Allocation)
    """
    budget = inst.X if budget is None else float(budget)
    if budget < 0:
        raise InvalidArgumentError(f"budget must be nonnegative, got {budget}")

    x = np.zeros(inst.C)
    if strat.delta_y > 0:
        rates = inst.v * strat.p.entries * strat.delta_y**2 / (2 * inst.Y)
        remaining = budget
        for c in np.argsort(-rates, kind="stable"):
            if rates[c] <= 0 or remaining <= 0:
                break
            x[c] = min(strat.cap, remaining)
            remaining -= x[c]

    allocation = Allocation(x)
    return expected_payoff_pureX_vs_Yhat(allocation, strat), allocation


def _attack_points(strat: XHatStrategy):
    """
    Vertices (contest, amount, gain to Y) of the piecewise-linear attack gains g_c(t) = v_c F_{X,c}(t).

    Index 0 is "no attack". An attack of amount 0 stands for an arbitrarily small positive amount,
    which beats X whenever X does not show up.
    """
    inst = strat.inst
    contests, amounts, gains = [None], [0.0], [0.0]
    caps = strat.caps
    for c in range(inst.C):
        contests.append(c)
        amounts.append(0.0)
        gains.append(inst.v[c] * (1 - strat.delta[c]))
        if strat.delta[c] > 0:
            contests.append(c)
            amounts.append(caps[c])
            gains.append(inst.v[c])
    return contests, np.array(amounts), np.array(gains)


def best_response_Y_payoff(strat: XHatStrategy, inst: GameInstance):
    """
    Y's best single-contest mixture against X-hat, allowed to spend Y in expectation.

    The value is the upper concave envelope of all attack gains evaluated at Y, attained by at most
    two vertices. This value can lie below LB*; use single_attack_payoff to certify LB*.

    Returns
    -------
    (payoff to X, [{"contest", "amount", "probability"}, ...])
    """
    contests, amounts, gains = _attack_points(strat)
    response = mean_constrained_best_response(gains, amounts, inst.Y)

    mixture = [
        {"contest": contests[index], "amount": float(amounts[index]), "probability": float(weight)}
        for index, weight in response.mixture
    ]
    log.debug(f"Y best response against X-hat: {mixture}")
    return 1 - response.value, mixture


def single_attack_payoff(strat: XHatStrategy, inst: GameInstance) -> float:
    """
    X's payoff against the best deterministic attack spending Y on one contest: 1 - max_c v_c F_{X,c}(Y).

    With delta = optimal_deltas_X(alpha) this equals 1 - H(alpha).
    """
    win_chances = np.array([strat.marginal_cdf(c, inst.Y) for c in range(inst.C)])
    return float(1 - np.max(inst.v * win_chances))


def exact_pair_payoff(fx: XHatStrategy, fy: YHatStrategy) -> float:
    """
    Expected payoff of X-hat against Y-hat in closed form.

    Conditional on Y attacking contest c with a Uniform[0, b] amount, X loses when it skips c or allocates
    a Uniform[0, a] amount below Y's. E[min(y / a, 1)] is b / 2a for b <= a and 1 - a / 2b otherwise.
    """
    inst = fy.inst
    if fy.delta_y == 0:
        return 1.0

    b = fy.cap
    lose = np.ones(inst.C)
    for c in range(inst.C):
        if fx.delta[c] == 0:
            continue
        a = fx.caps[c]
        undercut = b / (2 * a) if b <= a else 1 - a / (2 * b)
        lose[c] = (1 - fx.delta[c]) + fx.delta[c] * undercut

    return float(1 - fy.delta_y * np.sum(fy.p.entries * inst.v * lose))
