"""Shot sampling, incoherent mixing, readout confusion and its mitigation."""

import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..core import (
    BcnotVariant,
    BiasParams,
    CircuitConfig,
    CircuitFamily,
    MixtureModel,
    OutcomeCounts,
    ReadoutModel,
    SingularCalibrationError,
    SqgeParams,
)
from .circuits import simulate_probabilities

logger = logging.getLogger(__name__)

# Independent random streams derived from one campaign seed.
GRID_STREAM = 0
CALIBRATION_STREAM = 1
BOOTSTRAP_STREAM = 2
ORDER_STREAM = 3

MAX_CALIBRATION_CONDITION = 1e12


def point_rng(seed: int, index: int, stream: int = GRID_STREAM) -> np.random.Generator:
    """Generator for one grid point (or resample) that does not depend on execution order."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(stream, index)))


def readout_matrix(readout: Optional[ReadoutModel], family: CircuitFamily) -> np.ndarray:
    """4x4 confusion matrix A[measured, prepared]; the single-qubit family ignores detector flips."""
    if readout is None or readout.is_ideal():
        return np.eye(4)
    if family is CircuitFamily.MZI_1Q:
        readout = ReadoutModel(readout.qi_p01, readout.qi_p10, 0.0, 0.0)
    return readout.confusion_matrix()


def apply_mixture(probs: np.ndarray, mixture: Optional[MixtureModel], family: CircuitFamily) -> np.ndarray:
    """eta * p + (1 - eta) * q with q uniform on the detector and <Z_i> = epsilon / (1 - eta) under q.

    The interferometer contrast of the mixed distribution is then exactly eta * <X> + epsilon.
    """
    if mixture is None or mixture.is_identity():
        return probs
    kappa = mixture.epsilon / (1.0 - mixture.eta)
    if family is CircuitFamily.MZI_1Q:
        background = np.array([(1 + kappa) / 2, 0.0, (1 - kappa) / 2, 0.0])
    else:
        background = np.array([1 + kappa, 1 + kappa, 1 - kappa, 1 - kappa]) / 4
    return mixture.eta * probs + (1.0 - mixture.eta) * background


def _as_distribution(probs: np.ndarray) -> np.ndarray:
    probs = np.clip(probs, 0.0, None)
    return probs / probs.sum()


def sample_distribution(probs: np.ndarray, shots: int, rng: np.random.Generator) -> Tuple[int, int, int, int]:
    if shots < 1:
        raise ValueError(f"Shot count must be positive, got {shots}.")
    return tuple(int(n) for n in rng.multinomial(shots, _as_distribution(probs)))


def noisy_probabilities(
    family: CircuitFamily,
    phi,
    alpha,
    sqge: Optional[SqgeParams] = None,
    bias: Optional[BiasParams] = None,
    variant: BcnotVariant = BcnotVariant.PLAIN,
    readout: Optional[ReadoutModel] = None,
    mixture: Optional[MixtureModel] = None,
) -> np.ndarray:
    """Measured-outcome distribution over a batch: exact circuit, then mixture, then readout."""
    probs = simulate_probabilities(family, phi, alpha, sqge, bias, variant)
    probs = apply_mixture(probs, mixture, family)
    return probs @ readout_matrix(readout, family).T


def sample(
    config: CircuitConfig,
    shots: int,
    readout: Optional[ReadoutModel] = None,
    seed: int = 0,
    mixture: Optional[MixtureModel] = None,
    index: int = 0,
) -> OutcomeCounts:
    """Multinomial shot counts for one circuit, deterministic in (seed, index)."""
    probs = noisy_probabilities(
        config.family,
        config.phi,
        config.alpha,
        config.sqge,
        config.bias,
        config.bcnot_variant,
        readout,
        mixture,
    )[0]
    counts = sample_distribution(probs, shots, point_rng(seed, index))
    return OutcomeCounts(counts, shots, seed, config.phi, config.alpha)


def calibration_counts(readout: Optional[ReadoutModel], shots: int, seed: int = 0) -> List[OutcomeCounts]:
    """Counts from preparing |00>, |01>, |10>, |11> and reading them out through `readout`."""
    matrix = readout_matrix(readout, CircuitFamily.WP_X)
    runs = []
    for prepared in range(4):
        rng = point_rng(seed, prepared, CALIBRATION_STREAM)
        runs.append(OutcomeCounts(sample_distribution(matrix[:, prepared], shots, rng), shots, seed))
    return runs


def mitigation_matrix(calibration: Sequence[OutcomeCounts]) -> np.ndarray:
    """Column-stochastic estimate of the confusion matrix from the four preparation runs."""
    if len(calibration) != 4:
        raise ValueError(f"Expected 4 calibration runs, got {len(calibration)}.")
    matrix = np.column_stack([run.frequencies() for run in calibration])
    condition = np.linalg.cond(matrix)
    if not np.isfinite(condition) or condition > MAX_CALIBRATION_CONDITION:
        raise SingularCalibrationError("Calibration matrix is not invertible.")
    return matrix


def mitigate_frequencies(frequencies: np.ndarray, matrix: np.ndarray) -> Tuple[np.ndarray, bool]:
    """Applies the inverse calibration and projects back onto the probability simplex.

    Returns:
        The mitigated distribution and whether any negative quasi-probability was clipped.
    """
    quasi = np.linalg.solve(matrix, frequencies)
    clipped = bool(np.any(quasi < 0.0))
    if clipped:
        logger.debug("Clipped negative quasi-probabilities %s.", quasi)
    return _as_distribution(quasi), clipped


def largest_remainder(probs: np.ndarray, shots: int) -> Tuple[int, int, int, int]:
    """Integer counts summing to `shots` that best follow `probs`."""
    raw = probs * shots
    counts = np.floor(raw).astype(int)
    missing = shots - int(counts.sum())
    for k in np.argsort(-(raw - counts), kind="stable")[:missing]:
        counts[k] += 1
    return tuple(int(n) for n in counts)


def mitigate_counts(counts: OutcomeCounts, matrix: np.ndarray) -> Tuple[OutcomeCounts, bool]:
    """Mitigated counts with the same shot total, plus the clipping flag."""
    probs, clipped = mitigate_frequencies(counts.frequencies(), matrix)
    mitigated = OutcomeCounts(largest_remainder(probs, counts.shots), counts.shots, counts.seed, counts.phi, counts.alpha)
    return mitigated, clipped
