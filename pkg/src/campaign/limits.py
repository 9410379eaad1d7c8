"""Exact visibility and distinguishability curves under biased entangling gates."""

import logging
import math
import os
from dataclasses import dataclass
from typing import Dict, List, Optional

import numpy as np

from ..core import BiasParams, Observable, SqgeParams
from ..operators.circuits import observable_values, visibility_scan
from ..utils.io import write_csv

logger = logging.getLogger(__name__)

LIMIT_COLUMNS = ["alpha", "V_X", "D", "V_X0", "V_X1", "Dm"]


@dataclass
class LimitCurves:
    alpha: np.ndarray
    v_x: np.ndarray
    d: np.ndarray
    v_x0: np.ndarray
    v_x1: np.ndarray
    dm: np.ndarray

    def rows(self) -> List[Dict[str, float]]:
        columns = (self.alpha, self.v_x, self.d, self.v_x0, self.v_x1, self.dm)
        return [dict(zip(LIMIT_COLUMNS, map(float, values))) for values in zip(*columns)]


def demo_limits(
    bias: BiasParams,
    sqge: Optional[SqgeParams] = None,
    alpha_points: int = 401,
    phi_points: int = 101,
) -> LimitCurves:
    """Visibilities of <X>, <X0>, <X1>, |D| and the signed D_m over alpha in [0, 4pi].

    Visibilities come from the first-harmonic fit along phi, which is exact here, so the
    curves reach 0 and 1 wherever the circuit does. D and D_m do not depend on phi and
    are read at phi = 0.
    """
    alpha = np.linspace(0.0, 4 * math.pi, alpha_points)
    phi = np.linspace(0.0, 2 * math.pi, phi_points)

    def scan(observable: Observable) -> np.ndarray:
        return np.array(
            [visibility_scan(observable, a, phi, sqge, bias, method="sinusoid") for a in alpha]
        )

    curves = LimitCurves(
        alpha=alpha,
        v_x=scan(Observable.X),
        d=np.abs(observable_values(Observable.D, 0.0, alpha, sqge, bias)),
        v_x0=scan(Observable.X0),
        v_x1=scan(Observable.X1),
        dm=observable_values(Observable.DM, 0.0, alpha, sqge, bias),
    )
    logger.info(
        "Limits: V_X in [%.4f, %.4f], max |D_m| = %.4f",
        curves.v_x.min(),
        curves.v_x.max(),
        np.abs(curves.dm).max(),
    )
    return curves


def write_limits(curves: LimitCurves, directory: str) -> str:
    path = os.path.join(directory, "limits.csv")
    write_csv(path, LIMIT_COLUMNS, curves.rows())
    logger.info("  -> wrote %d alpha values to %s", curves.alpha.size, path)
    return path
