"""Which-path circuits on the device gate set and the observables read from them.

The physical sequence for the two-qubit families is

    q_i: U2(phi + alpha/2, pi) --*------*-- G_i
    q_d: U2(0, pi) -------------X--U1--X-- G_d        U1 = U1(-alpha/2)

with G_i = U2(0, pi) for an X readout of the interferometer (identity otherwise) and
G_d = U2(0, 3pi/2) for the optimal detector basis, U1(alpha/2) for the eraser. The
single-qubit interferometer is U2(phi, pi) followed by U2(0, pi). Single-qubit gate
errors bias every U2 / U1 angle, and both CNOTs are replaced by the configured BCNOT.
"""

import logging
from typing import Optional, Tuple

import numpy as np

from ..core import (
    BcnotVariant,
    BiasParams,
    CircuitConfig,
    CircuitFamily,
    DegenerateConditionError,
    Observable,
    SqgeParams,
    WrongFamilyError,
)
from ..core.constants import DEGENERATE_PROB
from .gates import bcnot, biased_u2_qd, biased_u2_qi, optimal_readout
from .linalg import HADAMARD, apply_batch, apply_local, probabilities, tensor

logger = logging.getLogger(__name__)

MIN_SCAN_POINTS = 101


def _u1_stack(y: np.ndarray) -> np.ndarray:
    stack = np.zeros((y.size, 2, 2), dtype=complex)
    stack[:, 0, 0] = 1.0
    stack[:, 1, 1] = np.exp(1j * y)
    return stack


def _u2_stack(x: np.ndarray, y: float) -> np.ndarray:
    stack = np.empty((x.size, 2, 2), dtype=complex)
    stack[:, 0, 0] = 1.0
    stack[:, 0, 1] = -np.exp(1j * y)
    stack[:, 1, 0] = np.exp(1j * x)
    stack[:, 1, 1] = np.exp(1j * (x + y))
    return stack / np.sqrt(2.0)


def _grid(phi, alpha) -> Tuple[np.ndarray, np.ndarray]:
    phi, alpha = np.broadcast_arrays(np.atleast_1d(np.asarray(phi, dtype=float)), np.asarray(alpha, dtype=float))
    return phi.ravel(), alpha.ravel()


def simulate_probabilities(
    family: CircuitFamily,
    phi,
    alpha=0.0,
    sqge: Optional[SqgeParams] = None,
    bias: Optional[BiasParams] = None,
    variant: BcnotVariant = BcnotVariant.PLAIN,
) -> np.ndarray:
    """Exact outcome probabilities over a batch of (phi, alpha) points.

    Returns:
        Array of shape (N, 4) in the order 00, 01, 10, 11. The single-qubit
        interferometer reports its outcomes in columns 00 and 10.
    """
    sqge = sqge or SqgeParams()
    bias = bias or BiasParams()
    phi, alpha = _grid(phi, alpha)
    states = np.zeros((phi.size, 4), dtype=complex)
    states[:, 0] = 1.0

    if family is CircuitFamily.MZI_1Q:
        states = apply_local(states, _u2_stack(phi + sqge.theta1, np.pi + sqge.theta2), 0)
        states = apply_local(states, biased_u2_qi(0.0, np.pi, sqge), 0)
        return probabilities(states)

    entangler = bcnot(bias, variant)
    states = apply_local(states, _u2_stack(phi + alpha / 2 + sqge.theta1, np.pi + sqge.theta2), 0)
    states = apply_local(states, biased_u2_qd(0.0, np.pi, sqge), 1)
    states = apply_batch(entangler, states)
    states = apply_local(states, _u1_stack(-alpha / 2 + sqge.theta5), 1)
    states = apply_batch(entangler, states)
    if family.interferometer_in_x:
        states = apply_local(states, biased_u2_qi(0.0, np.pi, sqge), 0)
    if family.detector_optimal:
        states = apply_local(states, biased_u2_qd(0.0, 1.5 * np.pi, sqge), 1)
    else:
        states = apply_local(states, _u1_stack(alpha / 2 + sqge.theta5), 1)
    return probabilities(states)


def exact_probabilities(config: CircuitConfig) -> np.ndarray:
    """p(xy) of one configured circuit; two entries p(0), p(1) for the single-qubit family."""
    probs = simulate_probabilities(
        config.family, config.phi, config.alpha, config.sqge, config.bias, config.bcnot_variant
    )[0]
    if config.family is CircuitFamily.MZI_1Q:
        return probs[[0, 2]]
    return probs


def reference_probabilities(family: CircuitFamily, phi, alpha=0.0) -> np.ndarray:
    """Ideal probabilities from the textbook circuit (H, R_phi, controlled R_alpha, P_i^dag, P_d^dag)."""
    phi, alpha = _grid(phi, alpha)
    states = np.zeros((phi.size, 4), dtype=complex)
    states[:, 0] = 1.0
    if family is CircuitFamily.MZI_1Q:
        states = apply_local(states, HADAMARD, 0)
        states = apply_local(states, _u1_stack(phi), 0)
        return probabilities(apply_local(states, HADAMARD, 0))
    states = apply_batch(tensor(HADAMARD, HADAMARD), states)
    states = apply_local(states, _u1_stack(phi), 0)
    states[:, 3] *= np.exp(1j * alpha)
    if family.interferometer_in_x:
        states = apply_local(states, HADAMARD, 0)
    if family.detector_optimal:
        readout = np.stack([optimal_readout(a) for a in alpha])
        states = apply_local(states, readout, 1)
    return probabilities(states)


def _conditional_ratio(numerator: np.ndarray, denominator: np.ndarray, what: str) -> np.ndarray:
    if np.any(denominator < DEGENERATE_PROB):
        # Marginals here do not depend on phi, so there is no limit along phi to fall back on.
        raise DegenerateConditionError(f"Conditioning event for {what} has zero probability.")
    return numerator / denominator


def values_from_probabilities(observable: Observable, probs: np.ndarray) -> np.ndarray:
    """Maps a batch of outcome probabilities to the requested observable."""
    p00, p01, p10, p11 = (probs[:, k] for k in range(4))
    if observable in (Observable.X, Observable.X_SINGLE):
        return (p00 + p01) - (p10 + p11)
    if observable is Observable.X0:
        return _conditional_ratio(p00 - p10, p00 + p10, "<X_0>")
    if observable is Observable.X1:
        return _conditional_ratio(p01 - p11, p01 + p11, "<X_1>")
    if observable in (Observable.D, Observable.DM):
        left = _conditional_ratio(p00, p00 + p01, observable.value)
        right = _conditional_ratio(p11, p10 + p11, observable.value)
        return left + right - 1.0
    raise ValueError(f"Unknown observable: {observable}")


def observable_values(
    observable: Observable,
    phi,
    alpha=0.0,
    sqge: Optional[SqgeParams] = None,
    bias: Optional[BiasParams] = None,
    variant: BcnotVariant = BcnotVariant.PLAIN,
) -> np.ndarray:
    """Exact g(phi, alpha) for an observable, evaluated on the circuit that measures it."""
    probs = simulate_probabilities(observable.family, phi, alpha, sqge, bias, variant)
    return values_from_probabilities(observable, probs)


def _single(observable: Observable, config: CircuitConfig) -> float:
    return float(
        observable_values(observable, config.phi, config.alpha, config.sqge, config.bias, config.bcnot_variant)[0]
    )


def expectation_X(config: CircuitConfig) -> float:
    """<X> on the interferometer qubit, p(0.) - p(1.)."""
    if not config.family.interferometer_in_x:
        raise WrongFamilyError(f"{config.family.name} does not read the interferometer in the X basis.")
    observable = Observable.X_SINGLE if config.family is CircuitFamily.MZI_1Q else Observable.X
    probs = simulate_probabilities(
        config.family, config.phi, config.alpha, config.sqge, config.bias, config.bcnot_variant
    )
    return float(values_from_probabilities(observable, probs)[0])


def conditional_X(config: CircuitConfig) -> Tuple[float, float]:
    """(<X_0>, <X_1>), the interferometer contrast conditioned on each detector outcome."""
    if config.family is not CircuitFamily.ERASER_X:
        raise WrongFamilyError(f"Conditional <X_y> requires ERASER_X, got {config.family.name}.")
    return _single(Observable.X0, config), _single(Observable.X1, config)


def distinguishability(config: CircuitConfig) -> float:
    """Signed 2 p_succ - 1 from the path-conditioned detector statistics.

    WP_Z yields D for the optimal detector basis; ERASER_Z yields the measured D_m.
    """
    if config.family is CircuitFamily.WP_Z:
        return _single(Observable.D, config)
    if config.family is CircuitFamily.ERASER_Z:
        return _single(Observable.DM, config)
    raise WrongFamilyError(f"Distinguishability requires a Z-basis interferometer readout, got {config.family.name}.")


def trace_distance_D(alpha: float) -> float:
    """Trace distance between the ideal detector states |delta_0>, |delta_1>."""
    overlap = (1.0 + np.exp(1j * alpha)) / 2.0
    return float(np.sqrt(max(0.0, 1.0 - abs(overlap) ** 2)))


def visibility(values: np.ndarray) -> float:
    """(max - min) / (2 + max + min) of an expectation-value curve."""
    high, low = float(np.max(values)), float(np.min(values))
    return (high - low) / (2.0 + high + low)


def sinusoid_visibility(phi: np.ndarray, values: np.ndarray) -> float:
    """Visibility of the least-squares fit a + b cos(phi) + c sin(phi)."""
    design = np.column_stack([np.ones_like(phi), np.cos(phi), np.sin(phi)])
    (offset, b, c), *_ = np.linalg.lstsq(design, values, rcond=None)
    amplitude = np.hypot(b, c)
    return float(amplitude / (1.0 + offset))


def visibility_scan(
    observable: Observable,
    alpha: float,
    phi_grid: Optional[np.ndarray] = None,
    sqge: Optional[SqgeParams] = None,
    bias: Optional[BiasParams] = None,
    variant: BcnotVariant = BcnotVariant.PLAIN,
    method: str = "extrema",
) -> float:
    """Visibility of an exact interference curve along phi at fixed alpha.

    Args:
        observable: X, X0, X1 or X1q.
        alpha: detector coupling phase.
        phi_grid: phases covering [0, 2pi]; at least 101 points for the extrema method.
        method: "extrema" for grid extrema, "sinusoid" for a first-harmonic fit.
    """
    if observable not in (Observable.X, Observable.X0, Observable.X1, Observable.X_SINGLE):
        raise WrongFamilyError(f"Visibility is defined for interference observables, not {observable.value}.")
    if phi_grid is None:
        phi_grid = np.linspace(0.0, 2 * np.pi, MIN_SCAN_POINTS)
    phi_grid = np.asarray(phi_grid, dtype=float)
    values = observable_values(observable, phi_grid, alpha, sqge, bias, variant)
    if method == "extrema":
        if phi_grid.size < MIN_SCAN_POINTS:
            raise ValueError(f"Extrema visibility needs at least {MIN_SCAN_POINTS} phases, got {phi_grid.size}.")
        return visibility(values)
    if method == "sinusoid":
        return sinusoid_visibility(phi_grid, values)
    raise ValueError(f"Unknown visibility method: {method}")


def sqge_closed_form(observable: Observable, phi, alpha, sqge: SqgeParams) -> np.ndarray:
    """Analytic observables for ideal CNOTs with biased single-qubit gates."""
    phi, alpha = _grid(phi, alpha)
    t1, t2, t3, t4, t5 = sqge.as_array()
    if observable is Observable.X:
        return 0.5 * (np.cos(alpha + phi + t1 + t2 - t5) + np.cos(phi + t1 + t2 + t5))
    if observable is Observable.X0:
        return np.cos(phi + t1 + t2 + t5)
    if observable is Observable.X1:
        return np.cos(alpha + phi + t1 + t2 - t5)
    if observable is Observable.D:
        return np.sqrt(np.cos(t3 + t4) ** 2 * np.sin(alpha / 2 - t5) ** 2)
    if observable is Observable.DM:
        return np.zeros_like(phi)
    if observable is Observable.X_SINGLE:
        return np.cos(phi + t1 + t2)
    raise ValueError(f"Unknown observable: {observable}")


def first_order_closed_form(observable: Observable, phi, alpha, bias: BiasParams) -> np.ndarray:
    """Observables with ideal single-qubit gates and the BCNOT expanded to first order in beta."""
    phi, alpha = _grid(phi, alpha)
    b1, b2, b3, b4, b5 = bias.as_array()
    shift = b1 + b2 + b4 + b5
    half_sin, half_cos = np.sin(alpha / 2), np.cos(alpha / 2)
    if observable is Observable.D:
        return half_sin - shift * half_cos
    if observable is Observable.X:
        return (
            (1 + b2 - b4) * np.cos(phi) + (1 - b2 + b4) * np.cos(alpha + phi)
        ) / 2 - shift / 2 * (np.sin(phi) - np.sin(alpha + phi))
    if observable is Observable.X0:
        return np.cos(phi) + np.sin(phi) * ((b1 - b5) * half_sin - shift)
    if observable is Observable.X1:
        return np.cos(alpha + phi) + np.sin(alpha + phi) * ((b1 - b5) * half_sin + shift)
    if observable is Observable.DM:
        return np.full_like(phi, -b1 + b5) + (b2 - b4) * half_cos - np.pi / 2 * b3 * half_sin
    raise ValueError(f"No first-order expansion for {observable.value}.")
