import math
from typing import Dict, Tuple

from .types import BiasParams, SqgeParams

TWO_PI = 2.0 * math.pi

# Tolerances
UNITARY_TOL = 1e-12
NORM_TOL = 1e-12
DEGENERATE_PROB = 1e-15

# Campaign defaults: regular 101 x 101 grid over [0, 2pi]^2 at 8192 shots per circuit
DEFAULT_SHOTS = 8192
DEFAULT_GRID_POINTS = 101
SINGLE_QUBIT_POINTS = 401
BATCH_SIZE = 896
CALIBRATION_CIRCUITS_PER_BATCH = 4
REPETITION_TIME_US = 500.0

# Fit bounds
BETA_BOUND = 0.5
THETA_BOUND = math.pi / 10
ETA_BOUNDS: Tuple[float, float] = (0.7, 1.0)
EPSILON_BOUND = 0.5
BOUND_HIT_TOL = 1e-6
DEFAULT_STARTS = 8
DIFF_STEP = 1e-6
# one-sided check of the optimizer Jacobian at the optimum
JACOBIAN_CHECK_STEP = 1e-4
JACOBIAN_CHECK_TOL = 1e-3

# Bias used for the example limit curves
DEMO_BIAS = BiasParams(beta1=0.06, beta2=0.09, beta3=-0.05, beta4=-0.07, beta5=0.06)

# Hardware-fitted values reused as synthetic ground truth
SINGLE_QUBIT_TRUTH: Dict[str, float] = {"eta": 0.98581, "epsilon": 0.00519, "Theta1": -0.03219}
SINGLE_QUBIT_REPORTED_ERRORS: Dict[str, float] = {"eta": 0.00024, "epsilon": 0.00022, "Theta1": 0.00060}

# Conditional-eraser fit with the fully biased gate model, used as a realistic
# generator for model-selection campaigns.
ERASER_TRUTH_SQGE = SqgeParams(
    theta1=0.00326 * math.pi,
    theta2=0.00327 * math.pi,
    theta3=-0.01545 * math.pi,
    theta4=0.00289 * math.pi,
    theta5=0.00512 * math.pi,
)
ERASER_TRUTH_BIAS = BiasParams(beta1=-0.00394, beta2=-0.02698, beta3=0.23815, beta4=-0.06506, beta5=0.02333)
ERASER_TRUTH_MIXTURE = (0.94262, 0.03237)
