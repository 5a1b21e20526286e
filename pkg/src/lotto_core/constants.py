# numerical tolerances shared by all components
NORMALIZATION_TOL = 1e-9  # |sum(v) - 1| allowed in strict mode, also used for simplex vectors
BOUND_TOL = 1e-9  # slack for lb <= ub, lb >= gl style checks

# level bisection of the lower bound
BISECTION_TOL = 1e-12  # absolute tolerance on the level t
BISECTION_MAX_ITER = 200

# alpha entries below this are clipped inside the K-contest lower bound (v_c / alpha_c blows up at 0)
ALPHA_CLIP = 1e-12

# explicit enumeration of the size-K subsets grows like C choose K
MAX_CONTESTS_FOR_SUBSETS = 12

# the discretized oracle only handles small instances (full lattice for C <= 2, sparsified for C = 3)
MAX_CONTESTS_FOR_ORACLE = 3

# payoff-matrix entries the oracle is willing to materialize (float64)
MAX_ORACLE_ENTRIES = 25_000_000
