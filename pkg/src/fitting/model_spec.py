"""Experimental models f = eta * g + epsilon over the gate-model hierarchy."""

from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np

from ..core import BiasParams, GateTier, Observable, OutOfBoundsError, SqgeParams
from ..core.constants import BETA_BOUND, EPSILON_BOUND, ETA_BOUNDS, THETA_BOUND
from ..operators.circuits import observable_values


@dataclass(frozen=True)
class ParameterSpec:
    name: str
    lower: float
    upper: float
    nominal: float = 0.0


ETA = ParameterSpec("eta", ETA_BOUNDS[0], ETA_BOUNDS[1], 1.0)
EPSILON = ParameterSpec("epsilon", -EPSILON_BOUND, EPSILON_BOUND)
SHIFTS = {name: ParameterSpec(name, -THETA_BOUND, THETA_BOUND) for name in ("Theta1", "Theta2")}
THETAS = [ParameterSpec(f"theta{k}", -THETA_BOUND, THETA_BOUND) for k in range(1, 6)]
BETAS = [ParameterSpec(f"beta{k}", -BETA_BOUND, BETA_BOUND) for k in range(1, 6)]

# Shifts of the circuit variables that the ideal-gate curve of each observable depends on.
IDEAL_SHIFTS: Dict[Observable, Tuple[str, ...]] = {
    Observable.X: ("Theta1", "Theta2"),
    Observable.X0: ("Theta1",),
    Observable.X1: ("Theta1", "Theta2"),
    Observable.D: ("Theta2",),
    Observable.DM: (),
    Observable.X_SINGLE: ("Theta1",),
}

TIER_BIASES: Dict[GateTier, int] = {GateTier.SQGE: 0, GateTier.BCNOT2: 2, GateTier.BCNOT5: 5}


def _catalogue(observable: Observable, tier: GateTier) -> Tuple[ParameterSpec, ...]:
    if tier is GateTier.IDEAL:
        if observable is Observable.DM:
            # g vanishes identically, so eta is not identifiable
            return (EPSILON,)
        return (ETA, EPSILON) + tuple(SHIFTS[name] for name in IDEAL_SHIFTS[observable])
    if observable is Observable.X_SINGLE and tier is not GateTier.SQGE:
        raise ValueError(f"The single-qubit circuit has no entangling gate to bias ({tier.value}).")
    return (ETA, EPSILON) + tuple(THETAS) + tuple(BETAS[: TIER_BIASES[tier]])


@dataclass(frozen=True)
class ModelSpec:
    """An observable, a gate-model tier and the free parameters with their bounds."""

    observable: Observable
    tier: GateTier
    parameters: Tuple[ParameterSpec, ...]

    @classmethod
    def build(cls, observable: Observable, tier: GateTier) -> "ModelSpec":
        return cls(observable, tier, _catalogue(observable, tier))

    @property
    def names(self) -> List[str]:
        return [p.name for p in self.parameters]

    @property
    def lower(self) -> np.ndarray:
        return np.array([p.lower for p in self.parameters])

    @property
    def upper(self) -> np.ndarray:
        return np.array([p.upper for p in self.parameters])

    @property
    def nominal(self) -> np.ndarray:
        return np.array([p.nominal for p in self.parameters])

    @property
    def label(self) -> str:
        return f"{self.observable.value}/{self.tier.value}"

    def check_bounds(self, params: np.ndarray, tol: float = 1e-12):
        params = np.asarray(params, dtype=float)
        if params.shape != (len(self.parameters),):
            raise ValueError(f"{self.label} expects {len(self.parameters)} parameters, got {params.shape}.")
        outside = (params < self.lower - tol) | (params > self.upper + tol)
        if np.any(outside):
            names = [n for n, bad in zip(self.names, outside) if bad]
            raise OutOfBoundsError(f"{self.label}: parameters {names} outside their bounds.")


def model_eval(spec: ModelSpec, params, phi, alpha) -> np.ndarray:
    """eta * g(phi, alpha) + epsilon, with g from exact simulation under the tier's gate models."""
    spec.check_bounds(params)
    values = dict(zip(spec.names, np.asarray(params, dtype=float)))
    eta, epsilon = values.get("eta", 1.0), values.get("epsilon", 0.0)
    phi = np.asarray(phi, dtype=float)
    alpha = np.asarray(alpha, dtype=float)

    if spec.tier is GateTier.IDEAL:
        if spec.observable is Observable.DM:
            return np.full(np.broadcast(phi, alpha).shape, epsilon, dtype=float).ravel()
        g = observable_values(
            spec.observable,
            phi + values.get("Theta1", 0.0),
            alpha + values.get("Theta2", 0.0),
        )
    else:
        sqge = SqgeParams.from_array([values[f"theta{k}"] for k in range(1, 6)])
        bias = BiasParams.from_array([values.get(f"beta{k}", 0.0) for k in range(1, 6)])
        g = observable_values(spec.observable, phi, alpha, sqge, bias)
    return eta * g + epsilon
