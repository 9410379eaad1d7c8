"""Tenfold cross-validation and tier ranking."""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Sequence

import numpy as np

from ..core import DatasetError, GateTier
from ..core.constants import DEFAULT_STARTS
from .least_squares import Dataset, FitResult, evaluate, fit
from .model_spec import ModelSpec

logger = logging.getLogger(__name__)

TIE_TOLERANCE = 1e-3


@dataclass(frozen=True)
class FoldScore:
    chi2_nu: float
    rse: float
    n_test: int


@dataclass
class CrossValidationResult:
    """Per-fold fits, their out-of-fold scores and the fold-averaged parameters."""

    spec: ModelSpec
    folds: List[FitResult]
    scores: List[FoldScore]
    averaged_fit: FitResult

    @property
    def chi2_nu(self) -> float:
        return float(np.mean([s.chi2_nu for s in self.scores]))

    @property
    def rse(self) -> float:
        return float(np.mean([s.rse for s in self.scores]))

    @property
    def params_mean(self) -> np.ndarray:
        return self.averaged_fit.params

    @property
    def params_std(self) -> np.ndarray:
        return self.averaged_fit.std_errors

    @property
    def unstable(self) -> List[str]:
        """Parameters that ended at a bound in any fold."""
        hits = {name for fold in self.folds for name in fold.bound_hits}
        return [name for name in self.spec.names if name in hits]


def fold_indices(n: int, k: int = 10, seed: int = 0) -> List[np.ndarray]:
    """Disjoint, equal-size (within one) folds drawn uniformly at random."""
    permutation = np.random.default_rng(seed).permutation(n)
    return [np.sort(part) for part in np.array_split(permutation, k)]


def out_of_fold_score(spec: ModelSpec, result: FitResult, test: Dataset) -> FoldScore:
    held_out = evaluate(spec, result.params, test, n_free=0)
    return FoldScore(held_out.chi2 / len(test), float(np.sqrt(np.sum(held_out.residuals**2) / len(test))), len(test))


def cross_validate(
    spec: ModelSpec,
    dataset,
    k: int = 10,
    seed: int = 0,
    starts: int = DEFAULT_STARTS,
    workers: int = 1,
) -> CrossValidationResult:
    """k-fold cross-validation with parameters averaged over folds.

    Args:
        spec: model to validate.
        dataset: a list of Estimate or a Dataset; needs at least 10 points per fold.
        k: number of folds.
        seed: seeds both the fold partition and the multi-start sequence.
        starts: Sobol starts per fold fit.
        workers: threads over folds.
    """
    data = dataset if isinstance(dataset, Dataset) else Dataset.from_estimates(dataset)
    if len(data) < 10 * k:
        raise DatasetError(f"{k}-fold cross-validation needs at least {10 * k} points, got {len(data)}.")
    folds = fold_indices(len(data), k, seed)
    everything = np.arange(len(data))

    def run_fold(test_index: np.ndarray):
        train = data.subset(np.setdiff1d(everything, test_index))
        result = fit(spec, train, starts=starts, seed=seed)
        return result, out_of_fold_score(spec, result, data.subset(test_index))

    logger.info("  Cross-validating %s with %d folds...", spec.label, k)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(run_fold, folds))
    else:
        outcomes = [run_fold(test) for test in folds]

    fold_params = np.array([result.params for result, _ in outcomes])
    averaged = evaluate(spec, fold_params.mean(axis=0), data, fold_params.std(axis=0, ddof=1))
    averaged.fold_params = fold_params
    cv = CrossValidationResult(spec, [r for r, _ in outcomes], [s for _, s in outcomes], averaged)
    logger.info("  -> %s: out-of-fold chi2_nu=%.4f RSE=%.5f", spec.label, cv.chi2_nu, cv.rse)
    return cv


def rank_tiers(results: Dict[GateTier, CrossValidationResult]) -> List[GateTier]:
    """Tiers from best to worst out-of-fold chi2_nu.

    Neighbours whose scores differ by less than TIE_TOLERANCE (relative) are ordered by
    their number of unstable parameters.
    """
    order = sorted(results, key=lambda tier: results[tier].chi2_nu)
    for i in range(len(order) - 1):
        current, following = results[order[i]], results[order[i + 1]]
        close = abs(current.chi2_nu - following.chi2_nu) <= TIE_TOLERANCE * max(abs(current.chi2_nu), 1e-300)
        if close and len(following.unstable) < len(current.unstable):
            order[i], order[i + 1] = order[i + 1], order[i]
    return order


def score_table(results: Dict[str, Dict[GateTier, CrossValidationResult]]) -> Dict[str, Dict[str, Sequence[float]]]:
    """Observable -> tier -> (chi2_nu, RSE), the layout of the model-comparison table."""
    return {
        observable: {tier.value: (cv.chi2_nu, cv.rse) for tier, cv in by_tier.items()}
        for observable, by_tier in results.items()
    }
