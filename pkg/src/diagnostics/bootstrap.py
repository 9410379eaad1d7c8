"""Multinomial bootstrap of shot counts."""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Optional, Sequence, Union

import numpy as np

from ..core import ConfigError, DatasetError, OutcomeCounts
from ..operators.circuits import visibility
from ..operators.noise import BOOTSTRAP_STREAM, point_rng

logger = logging.getLogger(__name__)

MIN_RESAMPLES = 100
CHUNK = 500

Statistic = Callable[[np.ndarray], float]


def _as_count_matrix(counts: Union[np.ndarray, Sequence[OutcomeCounts]]):
    if isinstance(counts, np.ndarray):
        matrix = np.atleast_2d(counts).astype(int)
    else:
        matrix = np.array([c.counts for c in counts], dtype=int)
    shots = matrix.sum(axis=1)
    if np.any(shots != shots[0]):
        raise DatasetError("Every point must carry the same number of shots.")
    return matrix, int(shots[0])


def bootstrap_std(
    counts: Union[np.ndarray, Sequence[OutcomeCounts]],
    statistic: Statistic,
    resamples: int = 10000,
    seed: int = 0,
    workers: int = 1,
) -> float:
    """Standard deviation of `statistic` over multinomial resamples of every point's counts.

    Args:
        counts: (N, 4) count matrix or a list of OutcomeCounts sharing one shot total.
        statistic: maps an (N, 4) frequency matrix to a number.
        resamples: number of bootstrap replicates B.
        seed: base seed; each chunk of replicates derives its own stream from it.
        workers: threads over chunks.
    """
    if resamples < MIN_RESAMPLES:
        raise ConfigError(f"At least {MIN_RESAMPLES} resamples are required, got {resamples}.")
    matrix, shots = _as_count_matrix(counts)
    probs = matrix / shots
    sizes = [min(CHUNK, resamples - start) for start in range(0, resamples, CHUNK)]

    def run_chunk(index: int) -> np.ndarray:
        rng = point_rng(seed, index, BOOTSTRAP_STREAM)
        draws = rng.multinomial(shots, probs, size=(sizes[index], probs.shape[0]))
        return np.array([statistic(d / shots) for d in draws])

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(run_chunk, range(len(sizes))))
    else:
        chunks = [run_chunk(i) for i in range(len(sizes))]
    values = np.concatenate(chunks)
    logger.debug("Bootstrap over %d points: %d resamples, %d chunks.", matrix.shape[0], resamples, len(sizes))
    return float(values.std(ddof=1))


def visibility_statistic(phi: Optional[np.ndarray] = None) -> Statistic:
    """Visibility of the estimated contrast curve along phi at one alpha.

    With `phi` given the first-harmonic fit is used, otherwise the raw extrema.
    """
    projector = None
    if phi is not None:
        phi = np.asarray(phi, dtype=float)
        projector = np.linalg.pinv(np.column_stack([np.ones_like(phi), np.cos(phi), np.sin(phi)]))

    def statistic(freqs: np.ndarray) -> float:
        values = freqs[:, 0] + freqs[:, 1] - freqs[:, 2] - freqs[:, 3]
        if projector is None:
            return visibility(values)
        offset, b, c = projector @ values
        return float(np.hypot(b, c) / (1.0 + offset))

    return statistic
