from src.strategy_lab.best_responses import (
    best_response_X_payoff,
    best_response_Y_payoff,
    exact_pair_payoff,
    expected_payoff_pureX_vs_Yhat,
    single_attack_payoff,
)
from src.strategy_lab.monte_carlo import MonteCarloResult, monte_carlo_payoff
from src.strategy_lab.strategies import (
    XHatStrategy,
    YHatStrategy,
    as_generator,
    eval_T_LB,
    marginal_ks_distance,
    optimal_delta_Y,
    optimal_deltas_X,
    sample_X,
    sample_Y,
)
