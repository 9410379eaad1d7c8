import logging
import os
from dataclasses import asdict
from typing import Dict, List, Mapping, Optional, Union

import numpy as np

from ..fitting import FitResult
from ..utils.io import write_csv, write_json
from .runs_test import MIN_RUNS_LENGTH, runs_test

logger = logging.getLogger(__name__)


def grid_order(phi: np.ndarray, alpha: np.ndarray) -> np.ndarray:
    """Permutation that walks the grid along phi within each alpha."""
    return np.lexsort((phi, alpha))


def residual_map(result: FitResult) -> Dict:
    """Residuals z - f keyed by (phi, alpha) in grid order, with their extrema."""
    order = grid_order(result.phi, result.alpha)
    rows: List[Dict[str, float]] = [
        {"phi": float(result.phi[j]), "alpha": float(result.alpha[j]), "residual": float(result.residuals[j])}
        for j in order
    ]
    low, high = int(np.argmin(result.residuals)), int(np.argmax(result.residuals))
    return {
        "rows": rows,
        "min": {"phi": float(result.phi[low]), "alpha": float(result.alpha[low]), "residual": float(result.residuals[low])},
        "max": {
            "phi": float(result.phi[high]),
            "alpha": float(result.alpha[high]),
            "residual": float(result.residuals[high]),
        },
    }


def _execution_runs_tests(residuals: np.ndarray, execution_order) -> Dict:
    if not isinstance(execution_order, Mapping):
        return asdict(runs_test(residuals, execution_order))
    if len(execution_order) == 1:
        return asdict(runs_test(residuals, next(iter(execution_order.values()))))
    # several campaigns share no common clock; test each one on its own
    tests = {}
    for source, rows in execution_order.items():
        if len(rows) < MIN_RUNS_LENGTH:
            logger.info("  Skipping execution-order runs test of %s: %d residuals", source, len(rows))
            continue
        tests[source] = asdict(runs_test(residuals, rows))
    return tests


def write_residual_map(
    result: FitResult,
    directory: str,
    execution_order: Optional[Union[np.ndarray, Mapping[str, np.ndarray]]] = None,
) -> Dict:
    """Writes `<observable>_<tier>_residuals.csv` and a JSON summary with runs tests.

    Args:
        result: a completed fit.
        directory: output directory.
        execution_order: dataset rows in execution order, when known. A mapping from
            campaign to its rows (each in that campaign's execution order) gives one
            execution-order runs test per campaign when the dataset pools several.

    Returns:
        The JSON summary.
    """
    stem = f"{result.spec.observable.value}_{result.spec.tier.value.replace('+', '_')}"
    grid = residual_map(result)
    write_csv(os.path.join(directory, f"{stem}_residuals.csv"), ["phi", "alpha", "residual"], grid["rows"])

    grid_test = runs_test(result.residuals, grid_order(result.phi, result.alpha))
    summary = {"min": grid["min"], "max": grid["max"], "runs_test_grid": asdict(grid_test)}
    if execution_order is not None:
        summary["runs_test_execution"] = _execution_runs_tests(result.residuals, execution_order)
    write_json(os.path.join(directory, f"{stem}_residuals.json"), summary)
    logger.info("  -> residual map %s: grid runs p=%.3g", stem, grid_test.p_value)
    return summary
