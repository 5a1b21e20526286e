from src.multi_bounds.k_contest import KLowerVars, KUpperVars, enumerate_subsets, eval_lower_K, eval_upper_K
from src.multi_bounds.optimizer import optimize_lower_K, optimize_upper_K
