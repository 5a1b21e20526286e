from src.single_bounds.bounds_report import BoundsReport, compute_bounds
from src.single_bounds.lower_bound import (
    LowerBoundResult,
    alpha_at_level,
    eval_H,
    eval_Hc,
    eval_Hc_vector,
    lower_bound_objective,
    solve_lower_bound,
)
from src.single_bounds.upper_bound import (
    UpperBoundResult,
    equalized_mass,
    eval_T,
    eval_UB,
    q_of_subset,
    solve_upper_bound,
    ub_closed_form,
)
