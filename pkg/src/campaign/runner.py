"""Synthetic experiment campaigns: sample every grid point and write the dataset files."""

import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional

import numpy as np

from .. import __version__
from ..core import CircuitFamily, ConfigError, DegenerateConditionError, Estimate, Observable, OutcomeCounts
from ..core.constants import BATCH_SIZE, CALIBRATION_CIRCUITS_PER_BATCH, REPETITION_TIME_US
from ..operators.estimators import estimates_for_family
from ..operators.noise import (
    ORDER_STREAM,
    calibration_counts,
    noisy_probabilities,
    point_rng,
    sample_distribution,
)
from ..utils.io import read_csv, read_json, write_csv, write_json
from .config import CampaignConfig, config_from_flat

logger = logging.getLogger(__name__)

COUNTS_FILE = "counts.csv"
ESTIMATES_FILE = "estimates.csv"
CALIBRATION_FILE = "calibration.csv"
MANIFEST_FILE = "manifest.json"

COUNT_COLUMNS = ["exec_order", "phi", "alpha", "n00", "n01", "n10", "n11", "S"]
ESTIMATE_COLUMNS = ["phi", "alpha", "observable", "value", "std_error"]
CALIBRATION_COLUMNS = ["prepared", "n00", "n01", "n10", "n11", "S"]
PREPARED_STATES = ("00", "01", "10", "11")

SAMPLING_CHUNK = 1024


@dataclass
class CampaignData:
    """A campaign as written to or read from disk; point lists are in execution order."""

    config: CampaignConfig
    counts: List[OutcomeCounts]
    estimates: List[Estimate]
    calibration: List[OutcomeCounts]
    directory: Optional[str] = None

    def by_observable(self) -> Dict[Observable, List[Estimate]]:
        grouped: Dict[Observable, List[Estimate]] = {}
        for estimate in self.estimates:
            grouped.setdefault(estimate.observable, []).append(estimate)
        return grouped


def execution_order(config: CampaignConfig) -> np.ndarray:
    """Grid indices in the order the circuits are executed."""
    if config.order == "grid":
        return np.arange(config.size)
    return point_rng(config.seed, 0, ORDER_STREAM).permutation(config.size)


def batch_layout(config: CampaignConfig) -> Dict[str, int]:
    calibration = 0 if config.family is CircuitFamily.MZI_1Q else CALIBRATION_CIRCUITS_PER_BATCH
    return {
        "circuits_per_batch": BATCH_SIZE,
        "calibration_circuits_per_batch": calibration,
        "batches": math.ceil(config.size / BATCH_SIZE),
    }


def manifest(config: CampaignConfig) -> Dict:
    """Full config plus bookkeeping; the config block alone reproduces the campaign."""
    return {
        "config": config.to_flat(),
        "seed": config.seed,
        "version": __version__,
        "circuits": config.size,
        "batch_layout": batch_layout(config),
        # hardware facts with no simulator analogue, kept for reference
        "hardware": {
            "repetition_time_us": REPETITION_TIME_US,
            "projected_wall_clock_s": REPETITION_TIME_US * config.size * config.shots * 1e-6,
        },
    }


def sample_grid(config: CampaignConfig) -> List[OutcomeCounts]:
    """Counts for every grid point, in grid order; each point draws from its own stream."""
    phi, alpha = config.grid()
    probs = noisy_probabilities(
        config.family, phi, alpha, config.sqge, config.bias, config.variant, config.readout, config.mixture
    )

    def run_chunk(start: int) -> List[OutcomeCounts]:
        return [
            OutcomeCounts(
                sample_distribution(probs[j], config.shots, point_rng(config.seed, j)),
                config.shots,
                config.seed,
                float(phi[j]),
                float(alpha[j]),
            )
            for j in range(start, min(start + SAMPLING_CHUNK, config.size))
        ]

    starts = range(0, config.size, SAMPLING_CHUNK)
    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            chunks = list(pool.map(run_chunk, starts))
    else:
        chunks = [run_chunk(s) for s in starts]
    return [counts for chunk in chunks for counts in chunk]


def point_estimates(counts: List[OutcomeCounts], family: CircuitFamily) -> List[Estimate]:
    estimates: List[Estimate] = []
    skipped = 0
    for point in counts:
        try:
            estimates.extend(estimates_for_family(point, family))
        except DegenerateConditionError as e:
            skipped += 1
            logger.debug("Skipping point %r: %s", point, e)
    if skipped:
        logger.warning("  -> %d points skipped for degenerate conditioning.", skipped)
    return estimates


def run_campaign(config: CampaignConfig, directory: Optional[str] = None) -> CampaignData:
    """Samples a campaign and writes counts, estimates, calibration and manifest files.

    Args:
        config: the campaign.
        directory: output directory; defaults to config.output_dir.

    Returns:
        The campaign data in execution order.
    """
    directory = directory or config.output_dir
    logger.info(
        "Simulating campaign %s: %d circuits x %d shots (seed %d)",
        config.family.name,
        config.size,
        config.shots,
        config.seed,
    )
    grid_counts = sample_grid(config)
    order = execution_order(config)
    counts = [grid_counts[j] for j in order]
    calibration = [] if config.family is CircuitFamily.MZI_1Q else calibration_counts(
        config.readout, config.shots, config.seed
    )
    data = CampaignData(config, counts, point_estimates(counts, config.family), calibration, directory)
    write_campaign(data, directory)
    return data


def write_campaign(data: CampaignData, directory: str, prefix: str = ""):
    """Writes the dataset files; `prefix` distinguishes derived datasets (e.g. mitigated)."""
    count_rows = (
        {"exec_order": k, "phi": c.phi, "alpha": c.alpha, "n00": c.n00, "n01": c.n01, "n10": c.n10, "n11": c.n11,
         "S": c.shots}
        for k, c in enumerate(data.counts)
    )
    n = write_csv(os.path.join(directory, prefix + COUNTS_FILE), COUNT_COLUMNS, count_rows)
    estimate_rows = (
        {"phi": e.phi, "alpha": e.alpha, "observable": e.observable.value, "value": e.value, "std_error": e.std_error}
        for e in data.estimates
    )
    m = write_csv(os.path.join(directory, prefix + ESTIMATES_FILE), ESTIMATE_COLUMNS, estimate_rows)
    if data.calibration and not prefix:
        calibration_rows = (
            {"prepared": state, "n00": c.n00, "n01": c.n01, "n10": c.n10, "n11": c.n11, "S": c.shots}
            for state, c in zip(PREPARED_STATES, data.calibration)
        )
        write_csv(os.path.join(directory, CALIBRATION_FILE), CALIBRATION_COLUMNS, calibration_rows)
    if not prefix:
        write_json(os.path.join(directory, MANIFEST_FILE), manifest(data.config))
    logger.info("  -> wrote %d count rows and %d estimates to %s", n, m, directory)


def _counts_from_row(row: Dict[str, str], seed: int) -> OutcomeCounts:
    values = tuple(int(row[k]) for k in ("n00", "n01", "n10", "n11"))
    return OutcomeCounts(values, int(row["S"]), seed, float(row.get("phi", 0.0)), float(row.get("alpha", 0.0)))


def load_manifest(path: str) -> CampaignConfig:
    if not os.path.exists(path):
        raise ConfigError(f"Manifest not found: {path}")
    try:
        return config_from_flat(read_json(path)["config"])
    except (KeyError, TypeError, ValueError) as e:
        raise ConfigError(f"Malformed manifest {path}: {e}") from e


def load_campaign(directory: str, prefix: str = "") -> CampaignData:
    """Reads a campaign directory written by `run_campaign` (or its mitigated companion files)."""
    for name in (MANIFEST_FILE, prefix + COUNTS_FILE, prefix + ESTIMATES_FILE):
        if not os.path.exists(os.path.join(directory, name)):
            raise ConfigError(f"{directory} is not a campaign directory: {name} is missing.")
    config = load_manifest(os.path.join(directory, MANIFEST_FILE))
    rows = sorted(read_csv(os.path.join(directory, prefix + COUNTS_FILE)), key=lambda r: int(r["exec_order"]))
    counts = [_counts_from_row(row, config.seed) for row in rows]
    estimates = [
        Estimate(
            float(row["value"]),
            float(row["std_error"]),
            config.shots,
            float(row["phi"]),
            float(row["alpha"]),
            Observable(row["observable"]),
        )
        for row in read_csv(os.path.join(directory, prefix + ESTIMATES_FILE))
    ]
    calibration_path = os.path.join(directory, CALIBRATION_FILE)
    calibration = []
    if os.path.exists(calibration_path):
        calibration = [_counts_from_row(row, config.seed) for row in read_csv(calibration_path)]
    return CampaignData(config, counts, estimates, calibration, directory)
