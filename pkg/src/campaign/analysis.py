"""Model comparison, parameter tables, residual maps and duality curves for saved campaigns."""

import logging
import os
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence

import numpy as np

from ..core import CircuitFamily, Estimate, GateTier, Observable, OutcomeCounts
from ..core.constants import DEFAULT_STARTS
from ..diagnostics import bootstrap_std, visibility_statistic, write_residual_map
from ..fitting import CrossValidationResult, Dataset, ModelSpec, cross_validate, rank_tiers
from ..fitting.cross_validation import score_table
from ..utils.formatter import format_parameter_table, format_score_table
from ..utils.io import write_csv, write_json
from .runner import CampaignData, load_campaign

logger = logging.getLogger(__name__)

DEFAULT_TIERS = tuple(GateTier)
DUALITY_RESAMPLES = 1000

SCORE_COLUMNS = ["observable", "tier", "chi2_nu", "rse", "rank", "unstable"]
DUALITY_COLUMNS = ["alpha", "V", "V_std", "D", "D_std", "V2_plus_D2", "V2_plus_D2_std"]


@dataclass
class AnalysisReport:
    results: Dict[Observable, Dict[GateTier, CrossValidationResult]] = field(default_factory=dict)
    rankings: Dict[Observable, List[GateTier]] = field(default_factory=dict)
    residuals: Dict[str, Dict] = field(default_factory=dict)
    duality: List[Dict[str, float]] = field(default_factory=list)

    def scores(self) -> Dict[str, Dict[str, Sequence[float]]]:
        return score_table({obs.value: by_tier for obs, by_tier in self.results.items()})

    def parameters(self) -> Dict[str, Dict[str, Dict]]:
        """Fold-averaged parameters with fold spread; unstable = at a bound in any fold."""
        table: Dict[str, Dict[str, Dict]] = {}
        for by_tier in self.results.values():
            for cv in by_tier.values():
                unstable = set(cv.unstable)
                table[cv.spec.label] = {
                    name: {"value": float(v), "std_error": float(s), "unstable": name in unstable}
                    for name, v, s in zip(cv.spec.names, cv.params_mean, cv.params_std)
                }
        return table


def fit_dataset(estimates: Sequence[Estimate]) -> Dataset:
    """Dataset for fitting; zero-variance estimates get sigma = 1/S."""
    floored = [e if e.std_error > 0 else replace(e, std_error=1.0 / e.shots) for e in estimates]
    n_floored = sum(1 for e in estimates if e.std_error <= 0)
    if n_floored:
        logger.info("  -> %d estimates with zero sampling error floored at 1/S.", n_floored)
    return Dataset.from_estimates(floored)


def _specs(observable: Observable, tiers: Sequence[GateTier]) -> List[ModelSpec]:
    specs = []
    for tier in tiers:
        try:
            specs.append(ModelSpec.build(observable, tier))
        except ValueError as e:
            logger.info("  Skipping %s/%s: %s", observable.value, tier.value, e)
    return specs


def _alpha_key(alpha: float) -> float:
    return round(float(alpha), 12)


def duality_curve(
    wp_x: Sequence[OutcomeCounts],
    wp_z: Sequence[Estimate],
    resamples: int = DUALITY_RESAMPLES,
    seed: int = 0,
    workers: int = 1,
) -> List[Dict[str, float]]:
    """V, D and V^2 + D^2 per alpha from an X-readout and a Z-readout which-path campaign.

    V comes from the first-harmonic fit of the contrast along phi, its error from a count
    bootstrap. D is the phi-average of the point estimates.
    """
    counts_by_alpha: Dict[float, List[OutcomeCounts]] = {}
    for c in wp_x:
        counts_by_alpha.setdefault(_alpha_key(c.alpha), []).append(c)
    d_by_alpha: Dict[float, List[Estimate]] = {}
    for e in wp_z:
        d_by_alpha.setdefault(_alpha_key(e.alpha), []).append(e)

    rows = []
    for k, alpha in enumerate(sorted(set(counts_by_alpha) & set(d_by_alpha))):
        points = sorted(counts_by_alpha[alpha], key=lambda c: c.phi)
        phi = np.array([c.phi for c in points])
        matrix = np.array([c.counts for c in points], dtype=int)
        statistic = visibility_statistic(phi)
        v = statistic(matrix / matrix.sum(axis=1, keepdims=True))
        v_std = bootstrap_std(matrix, statistic, resamples=resamples, seed=seed + k, workers=workers)

        d_points = d_by_alpha[alpha]
        d = float(np.mean([e.value for e in d_points]))
        d_std = float(np.sqrt(np.sum([e.std_error**2 for e in d_points])) / len(d_points))
        rows.append(
            {
                "alpha": alpha,
                "V": v,
                "V_std": v_std,
                "D": d,
                "D_std": d_std,
                "V2_plus_D2": v**2 + d**2,
                "V2_plus_D2_std": float(np.hypot(2 * v * v_std, 2 * d * d_std)),
            }
        )
    logger.info("  -> duality curve over %d alpha values", len(rows))
    return rows


def _collect(campaigns: Sequence[CampaignData]):
    """Pools estimates per observable; `segments` maps each source directory to its dataset rows."""
    estimates: Dict[Observable, List[Estimate]] = {}
    segments: Dict[Observable, Dict[str, np.ndarray]] = {}
    counts: Dict[CircuitFamily, List[OutcomeCounts]] = {}
    for data in campaigns:
        for observable, values in data.by_observable().items():
            pooled = estimates.setdefault(observable, [])
            segments.setdefault(observable, {})[data.directory] = np.arange(len(pooled), len(pooled) + len(values))
            pooled.extend(values)
        counts.setdefault(data.config.family, []).extend(data.counts)
    return estimates, segments, counts


def run_analysis(
    directories: Sequence[str],
    output_dir: str,
    tiers: Sequence[GateTier] = DEFAULT_TIERS,
    k: int = 10,
    seed: int = 0,
    starts: int = DEFAULT_STARTS,
    workers: int = 1,
    prefix: str = "",
    resamples: int = DUALITY_RESAMPLES,
    observables: Optional[Sequence[Observable]] = None,
) -> AnalysisReport:
    """Cross-validates every tier on every observable found in the campaigns and writes the report.

    Args:
        directories: campaign directories written by `run_campaign`.
        output_dir: where scores.csv, parameters.json, residual maps and duality.csv go.
        tiers: gate-model tiers to compare.
        k: cross-validation folds.
        seed: seeds the fold partition, multi-start points and bootstrap.
        starts: Sobol starts per fit.
        workers: threads for folds and bootstrap chunks.
        prefix: dataset file prefix, e.g. "mitigated_".
        resamples: bootstrap replicates per alpha of the duality curve.
        observables: restrict the comparison to these observables.

    Returns:
        The report, also written to `output_dir`.
    """
    campaigns = [load_campaign(directory, prefix) for directory in directories]
    estimates, segments, counts = _collect(campaigns)
    report = AnalysisReport()
    os.makedirs(output_dir, exist_ok=True)

    for observable, values in estimates.items():
        if observables is not None and observable not in observables:
            continue
        logger.info("Analysing %s: %d estimates", observable.value, len(values))
        data = fit_dataset(values)
        by_tier = {}
        for spec in _specs(observable, tiers):
            cv = cross_validate(spec, data, k=k, seed=seed, starts=starts, workers=workers)
            by_tier[spec.tier] = cv
            # each campaign stores its estimates in execution order
            report.residuals[spec.label] = write_residual_map(cv.averaged_fit, output_dir, segments[observable])
        if by_tier:
            report.results[observable] = by_tier
            report.rankings[observable] = rank_tiers(by_tier)

    score_rows = []
    for observable, by_tier in report.results.items():
        ranking = report.rankings[observable]
        for tier, cv in by_tier.items():
            score_rows.append(
                {
                    "observable": observable.value,
                    "tier": tier.value,
                    "chi2_nu": cv.chi2_nu,
                    "rse": cv.rse,
                    "rank": ranking.index(tier) + 1,
                    "unstable": ";".join(cv.unstable),
                }
            )
    write_csv(os.path.join(output_dir, "scores.csv"), SCORE_COLUMNS, score_rows)
    parameters = report.parameters()
    write_json(os.path.join(output_dir, "parameters.json"), parameters)
    write_json(
        os.path.join(output_dir, "rankings.json"),
        {obs.value: [t.value for t in order] for obs, order in report.rankings.items()},
    )

    if CircuitFamily.WP_X in counts and Observable.D in estimates:
        report.duality = duality_curve(counts[CircuitFamily.WP_X], estimates[Observable.D], resamples, seed, workers)
        write_csv(os.path.join(output_dir, "duality.csv"), DUALITY_COLUMNS, report.duality)

    logger.info("Out-of-fold scores:\n%s", format_score_table(report.scores(), list(tiers)))
    logger.info("Fold-averaged parameters (* = unstable):\n%s", format_parameter_table(parameters))
    return report
