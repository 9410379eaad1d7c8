"""Bounded weighted least squares with multi-start and goodness-of-fit scores."""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import least_squares
from scipy.stats import qmc

from ..core import DatasetError, DegenerateConditionError, Estimate, NonConvergenceError
from ..core.constants import BOUND_HIT_TOL, DEFAULT_STARTS, DIFF_STEP, JACOBIAN_CHECK_STEP, JACOBIAN_CHECK_TOL
from .model_spec import ModelSpec, model_eval

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Dataset:
    """Column view of a list of estimates."""

    phi: np.ndarray
    alpha: np.ndarray
    z: np.ndarray
    sigma: np.ndarray

    @classmethod
    def from_estimates(cls, estimates: Sequence[Estimate]) -> "Dataset":
        return cls(
            np.array([e.phi for e in estimates], dtype=float),
            np.array([e.alpha for e in estimates], dtype=float),
            np.array([e.value for e in estimates], dtype=float),
            np.array([e.std_error for e in estimates], dtype=float),
        )

    def __len__(self) -> int:
        return self.z.size

    def subset(self, index: np.ndarray) -> "Dataset":
        return Dataset(self.phi[index], self.alpha[index], self.z[index], self.sigma[index])


@dataclass
class FitResult:
    """Optimum of one model on one dataset.

    `fold_params` holds the per-fold optima when the result comes from cross-validation;
    `std_errors` then holds their spread instead of the covariance estimate.
    """

    spec: ModelSpec
    params: np.ndarray
    std_errors: np.ndarray
    chi2: float
    dof: int
    rse: float
    r2: float
    residuals: np.ndarray
    phi: np.ndarray
    alpha: np.ndarray
    bound_hits: Tuple[str, ...] = ()
    fold_params: Optional[np.ndarray] = None
    starts: int = 1
    extra: Dict[str, float] = field(default_factory=dict)

    @property
    def chi2_nu(self) -> float:
        return self.chi2 / self.dof if self.dof > 0 else float("inf")

    def params_dict(self) -> Dict[str, float]:
        return {name: float(v) for name, v in zip(self.spec.names, self.params)}

    def to_dict(self) -> Dict:
        summary = {
            "observable": self.spec.observable.value,
            "tier": self.spec.tier.value,
            "parameters": {
                name: {"value": float(v), "std_error": float(s), "unstable": name in self.bound_hits}
                for name, v, s in zip(self.spec.names, self.params, self.std_errors)
            },
            "chi2": self.chi2,
            "dof": self.dof,
            "chi2_nu": self.chi2_nu,
            "rse": self.rse,
            "r2": self.r2,
        }
        if self.fold_params is not None:
            summary["fold_params"] = self.fold_params.tolist()
        return summary


def score(result: FitResult) -> Tuple[float, float, float]:
    """(chi2_nu, RSE, R^2) of a completed fit."""
    return result.chi2_nu, result.rse, result.r2


def bound_hits(spec: ModelSpec, params: np.ndarray, tol: float = BOUND_HIT_TOL) -> Tuple[str, ...]:
    near = (params - spec.lower < tol) | (spec.upper - params < tol)
    return tuple(name for name, hit in zip(spec.names, near) if hit)


def evaluate(spec: ModelSpec, params: np.ndarray, data: Dataset, std_errors=None, n_free=None) -> FitResult:
    """Scores fixed parameters on a dataset without optimizing."""
    params = np.clip(np.asarray(params, dtype=float), spec.lower, spec.upper)
    prediction = model_eval(spec, params, data.phi, data.alpha)
    residuals = data.z - prediction
    n_free = len(spec.parameters) if n_free is None else n_free
    dof = len(data) - n_free
    chi2 = float(np.sum((residuals / data.sigma) ** 2))
    ss_res = float(np.sum(residuals**2))
    ss_tot = float(np.sum((data.z - data.z.mean()) ** 2))
    return FitResult(
        spec=spec,
        params=params,
        std_errors=np.zeros_like(params) if std_errors is None else np.asarray(std_errors, dtype=float),
        chi2=chi2,
        dof=dof,
        rse=float(np.sqrt(ss_res / dof)) if dof > 0 else float("nan"),
        r2=1.0 - ss_res / ss_tot if ss_tot > 0 else (1.0 if ss_res == 0 else 0.0),
        residuals=residuals,
        phi=data.phi,
        alpha=data.alpha,
        bound_hits=bound_hits(spec, params),
    )


def start_points(spec: ModelSpec, starts: int, seed: int) -> np.ndarray:
    """The nominal point followed by `starts` scrambled Sobol points over the bound box."""
    points = [spec.nominal]
    if starts > 0:
        sampler = qmc.Sobol(d=len(spec.parameters), scramble=True, seed=seed)
        unit = sampler.random_base2(int(np.ceil(np.log2(starts))))[:starts]
        points.extend(qmc.scale(unit, spec.lower, spec.upper))
    return np.array(points)


def _weighted_residuals(spec: ModelSpec, data: Dataset, params: np.ndarray) -> np.ndarray:
    return (model_eval(spec, params, data.phi, data.alpha) - data.z) / data.sigma


def _solve(spec: ModelSpec, data: Dataset, x0: np.ndarray, start: int = 0):
    try:
        return least_squares(
            lambda params: _weighted_residuals(spec, data, params),
            x0,
            jac="3-point",
            bounds=(spec.lower, spec.upper),
            method="trf",
            diff_step=DIFF_STEP,
            x_scale="jac",
        )
    except (ValueError, DegenerateConditionError, np.linalg.LinAlgError) as e:
        logger.warning("  Start %d of %s discarded at %s: %s", start, spec.label, np.round(x0, 6).tolist(), e)
        return None


def jacobian_mismatch(
    spec: ModelSpec,
    data: Dataset,
    params: np.ndarray,
    jacobian: np.ndarray,
    step: float = JACOBIAN_CHECK_STEP,
) -> float:
    """Relative Frobenius distance between `jacobian` and a one-sided difference Jacobian.

    Each parameter is stepped away from its nearer bound so the check stays inside the box.
    """
    params = np.asarray(params, dtype=float)
    base = _weighted_residuals(spec, data, params)
    numeric = np.empty_like(jacobian, dtype=float)
    for k in range(params.size):
        h = step * max(1.0, abs(params[k]))
        if params[k] + h > spec.upper[k]:
            h = -h
        shifted = params.copy()
        shifted[k] += h
        numeric[:, k] = (_weighted_residuals(spec, data, shifted) - base) / h
    scale = max(float(np.linalg.norm(numeric)), np.finfo(float).tiny)
    return float(np.linalg.norm(jacobian - numeric) / scale)


def covariance_errors(jacobian: np.ndarray) -> np.ndarray:
    """Standard errors from (J^T J)^-1 of the weighted residual Jacobian."""
    covariance = np.linalg.pinv(jacobian.T @ jacobian)
    return np.sqrt(np.clip(np.diag(covariance), 0.0, None))


def fit(
    spec: ModelSpec,
    dataset,
    starts: int = DEFAULT_STARTS,
    seed: int = 0,
    workers: int = 1,
) -> FitResult:
    """Minimizes chi^2 = sum(((z - f) / sigma)^2) within the parameter bounds.

    Args:
        spec: model and its bounds.
        dataset: a list of Estimate or a Dataset.
        starts: number of Sobol starts in addition to the nominal point.
        seed: scrambling seed of the start sequence.
        workers: threads used for the starts.

    Returns:
        The best of all starts, with covariance precision errors and bound-hit flags.
    """
    data = dataset if isinstance(dataset, Dataset) else Dataset.from_estimates(dataset)
    if np.any(data.sigma <= 0):
        raise DatasetError("Every standard error must be positive.")
    if len(data) <= len(spec.parameters):
        raise DatasetError(f"{len(data)} points cannot constrain {len(spec.parameters)} parameters.")

    points = start_points(spec, starts, seed)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            solutions = list(pool.map(lambda item: _solve(spec, data, item[1], item[0]), enumerate(points)))
    else:
        solutions = [_solve(spec, data, x0, k) for k, x0 in enumerate(points)]

    candidates = [s for s in solutions if s is not None and np.isfinite(s.cost)]
    if not candidates:
        raise NonConvergenceError(f"All {len(points)} starts failed for {spec.label}.")
    best = min(candidates, key=lambda s: s.cost)

    result = evaluate(spec, best.x, data, covariance_errors(best.jac))
    result.starts = len(points)
    mismatch = jacobian_mismatch(spec, data, result.params, best.jac)
    result.extra["jacobian_mismatch"] = mismatch
    if mismatch > JACOBIAN_CHECK_TOL:
        logger.warning("  -> %s: Jacobian disagrees with finite differences at the optimum (%.2e)", spec.label, mismatch)
    else:
        logger.debug("  -> %s: Jacobian check %.2e", spec.label, mismatch)
    if result.bound_hits:
        logger.warning("  -> %s: parameters at bounds %s", spec.label, ", ".join(result.bound_hits))
    logger.info(
        "  Fitted %s on %d points: chi2_nu=%.4f (best of %d starts)",
        spec.label,
        len(data),
        result.chi2_nu,
        len(candidates),
    )
    return result
