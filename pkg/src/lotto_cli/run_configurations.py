"""
Default settings of the command-line runs.

Every value here can be overridden by the matching long-form flag, e.g. --seed, --restarts or --samples.
The sweep default reproduces the reference trace: X fixed, Y from 0.05 to 3 in steps of 0.05.
"""
SEED = 42
RESTARTS = 50  # multi-start Nelder-Mead restarts per K-contest bound
NUM_SAMPLES = 10**6  # Monte Carlo plays in `simulate`
NUM_WORKERS = 1  # processes sharing the Monte Carlo blocks, the estimate does not depend on it
FP_ITERATIONS = 20000  # fictitious-play rounds in `oracle`
Y_RANGE = "0.05:3:0.05"  # lo:hi:step
WITHIN_BOUNDS_SE = 3  # Monte Carlo estimate may leave [lb, ub] by this many standard errors
PLOT_SIZE_INCHES = (8, 6)
PLOT_DPI = 100  # 800 x 600 canvas
