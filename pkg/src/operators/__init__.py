from .circuits import (
    conditional_X,
    distinguishability,
    exact_probabilities,
    expectation_X,
    first_order_closed_form,
    observable_values,
    reference_probabilities,
    simulate_probabilities,
    sqge_closed_form,
    trace_distance_D,
    visibility,
    visibility_scan,
)
from .estimators import (
    FAMILY_OBSERVABLES,
    estimate_conditional_X,
    estimate_D,
    estimate_observable,
    estimate_X,
    estimates_for_family,
)
from .gates import bcnot, bcnot5_closed_form, cnot, u1, u2, u_eff, u_zx
from .noise import (
    calibration_counts,
    mitigate_counts,
    mitigation_matrix,
    noisy_probabilities,
    point_rng,
    sample,
)

__all__ = [
    "simulate_probabilities",
    "exact_probabilities",
    "reference_probabilities",
    "observable_values",
    "expectation_X",
    "conditional_X",
    "distinguishability",
    "trace_distance_D",
    "visibility",
    "visibility_scan",
    "sqge_closed_form",
    "first_order_closed_form",
    "FAMILY_OBSERVABLES",
    "estimate_X",
    "estimate_D",
    "estimate_conditional_X",
    "estimate_observable",
    "estimates_for_family",
    "u1",
    "u2",
    "u_zx",
    "u_eff",
    "cnot",
    "bcnot",
    "bcnot5_closed_form",
    "sample",
    "noisy_probabilities",
    "point_rng",
    "calibration_counts",
    "mitigation_matrix",
    "mitigate_counts",
]
