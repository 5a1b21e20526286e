from src.discrete_oracle.discrete_game import DiscreteGame, build_discrete_game, default_cap, default_grid_step, payoff_matrix
from src.discrete_oracle.fictitious_play import OracleResult, fictitious_play
from src.discrete_oracle.mean_constrained import BestResponse, CostLevels, mean_constrained_best_response
