MAX_DERIVATIVE_ORDER = 3

# Levenberg-Marquardt defaults
SOLVER_MAX_ITERS = 200
SOLVER_RESIDUAL_TOL = 1e-10
SOLVER_DAMPING_INIT = 1e-3
SOLVER_DAMPING_FACTOR = 10.0
SOLVER_DAMPING_MAX = 1e16
SOLVER_INIT_SIGMA = 0.1

# share of the noiseless curve value range used as default sigma_y
RELATIVE_SIGMA_Y = 0.01

KS_P_FLOOR = 1e-16

KMEANS_MAX_ITERS = 100

AE_HIDDEN_WIDTH = 64
AE_EPOCHS = 50
AE_BATCH_SIZE = 64
AE_LEARNING_RATE = 1e-3

DEFAULT_SEEDS = [1, 2, 3, 4, 5]

# noise stream identifiers for RunContext substreams
STREAM_SCHEDULE = 0
STREAM_GRID = 1
STREAM_CURVE = 2
STREAM_INIT = 3

PRESET_MIN_SEGMENT = 5
