"""Point estimates and standard errors from shot counts."""

from typing import List, Tuple

import numpy as np

from ..core import (
    CircuitFamily,
    DegenerateConditionError,
    Estimate,
    InsufficientShotsError,
    Observable,
    OutcomeCounts,
)

FAMILY_OBSERVABLES = {
    CircuitFamily.WP_X: (Observable.X,),
    CircuitFamily.WP_Z: (Observable.D,),
    CircuitFamily.ERASER_X: (Observable.X, Observable.X0, Observable.X1),
    CircuitFamily.ERASER_Z: (Observable.DM,),
    CircuitFamily.MZI_1Q: (Observable.X_SINGLE,),
}


def _check_denominator(denominator: np.ndarray, what: str):
    if np.any(denominator <= 0.0):
        raise DegenerateConditionError(f"No shots fell in the conditioning event of {what}.")


def contrast_from_frequencies(freqs: np.ndarray, shots: int) -> Tuple[np.ndarray, np.ndarray]:
    """X = p(0.) - p(1.) with s^2 = S/(S-1) (1 - X^2) and sigma = s / sqrt(S)."""
    if shots < 2:
        raise InsufficientShotsError(f"The sample variance needs S >= 2 shots, got {shots}.")
    value = freqs[..., 0] + freqs[..., 1] - freqs[..., 2] - freqs[..., 3]
    variance = shots / (shots - 1) * (1.0 - value**2)
    return value, np.sqrt(np.clip(variance, 0.0, None) / shots)


def distinguishability_from_frequencies(freqs: np.ndarray, shots: int) -> Tuple[np.ndarray, np.ndarray]:
    """Path-guessing advantage p00/(p00+p01) + p11/(p10+p11) - 1 and its standard error."""
    p00, p01, p10, p11 = (freqs[..., k] for k in range(4))
    first, second = p00 + p01, p10 + p11
    _check_denominator(first, "D")
    _check_denominator(second, "D")
    value = p00 / first + p11 / second - 1.0
    error = np.sqrt(p00 * p01 / (shots * first**3) + p10 * p11 / (shots * second**3))
    return value, error


def conditional_contrast_from_frequencies(freqs: np.ndarray, shots: int, y: int) -> Tuple[np.ndarray, np.ndarray]:
    """X_y = (p0y - p1y)/(p0y + p1y) with sigma = sqrt(4 p0y p1y / (S (p0y + p1y)^3))."""
    if y not in (0, 1):
        raise ValueError(f"Detector outcome must be 0 or 1, got {y}.")
    zero, one = freqs[..., y], freqs[..., 2 + y]
    total = zero + one
    _check_denominator(total, f"X_{y}")
    value = (zero - one) / total
    error = np.sqrt(4.0 * zero * one / (shots * total**3))
    return value, error


def from_frequencies(observable: Observable, freqs: np.ndarray, shots: int) -> Tuple[np.ndarray, np.ndarray]:
    """Vectorised estimate of `observable` over any leading batch shape."""
    if observable in (Observable.X, Observable.X_SINGLE):
        return contrast_from_frequencies(freqs, shots)
    if observable in (Observable.D, Observable.DM):
        return distinguishability_from_frequencies(freqs, shots)
    if observable is Observable.X0:
        return conditional_contrast_from_frequencies(freqs, shots, 0)
    if observable is Observable.X1:
        return conditional_contrast_from_frequencies(freqs, shots, 1)
    raise ValueError(f"Unknown observable: {observable}")


def _estimate(counts: OutcomeCounts, observable: Observable, pair) -> Estimate:
    value, error = pair
    return Estimate(float(value), float(error), counts.shots, counts.phi, counts.alpha, observable)


def estimate_X(counts: OutcomeCounts, observable: Observable = Observable.X) -> Estimate:
    return _estimate(counts, observable, contrast_from_frequencies(counts.frequencies(), counts.shots))


def estimate_D(counts: OutcomeCounts, observable: Observable = Observable.D) -> Estimate:
    return _estimate(counts, observable, distinguishability_from_frequencies(counts.frequencies(), counts.shots))


def estimate_conditional_X(counts: OutcomeCounts, y: int) -> Estimate:
    observable = Observable.X0 if y == 0 else Observable.X1
    return _estimate(counts, observable, conditional_contrast_from_frequencies(counts.frequencies(), counts.shots, y))


def estimate_observable(counts: OutcomeCounts, observable: Observable) -> Estimate:
    return _estimate(counts, observable, from_frequencies(observable, counts.frequencies(), counts.shots))


def estimates_for_family(counts: OutcomeCounts, family: CircuitFamily) -> List[Estimate]:
    """Every estimate a circuit family yields from one set of counts."""
    return [estimate_observable(counts, observable) for observable in FAMILY_OBSERVABLES[family]]
