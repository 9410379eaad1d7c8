"""Campaign configuration: dotted key-value files, environment defaults and manifests."""

import logging
import math
import os
from dataclasses import dataclass, field, replace
from typing import Dict, Optional

import numpy as np
from dotenv import dotenv_values

from ..core import (
    BcnotVariant,
    BiasParams,
    CircuitFamily,
    ConfigError,
    MixtureModel,
    ReadoutModel,
    SqgeParams,
)
from ..core.constants import DEFAULT_GRID_POINTS, DEFAULT_SHOTS, SINGLE_QUBIT_POINTS, TWO_PI

logger = logging.getLogger(__name__)

ORDERS = ("random", "grid")


@dataclass(frozen=True)
class CampaignConfig:
    """Everything needed to reproduce one synthetic experiment."""

    family: CircuitFamily = CircuitFamily.WP_X
    phi_points: int = DEFAULT_GRID_POINTS
    alpha_points: int = DEFAULT_GRID_POINTS
    phi_min: float = 0.0
    phi_max: float = TWO_PI
    alpha_min: float = 0.0
    alpha_max: float = TWO_PI
    shots: int = DEFAULT_SHOTS
    order: str = "random"
    seed: int = 0
    workers: int = 1
    output_dir: str = "output"
    sqge: SqgeParams = field(default_factory=SqgeParams)
    bias: BiasParams = field(default_factory=BiasParams)
    variant: BcnotVariant = BcnotVariant.PLAIN
    readout: ReadoutModel = field(default_factory=ReadoutModel)
    mixture: MixtureModel = field(default_factory=MixtureModel)

    def __post_init__(self):
        if self.shots < 1:
            raise ConfigError(f"campaign.shots must be at least 1, got {self.shots}.")
        if self.phi_points < 1 or self.alpha_points < 1:
            raise ConfigError("Grid point counts must be positive.")
        for name in ("phi_min", "phi_max", "alpha_min", "alpha_max"):
            value = getattr(self, name)
            if not 0.0 <= value <= TWO_PI + 1e-12:
                raise ConfigError(f"grid.{name}={value} outside [0, 2pi].")
        if self.phi_min > self.phi_max or self.alpha_min > self.alpha_max:
            raise ConfigError("Grid minimum exceeds its maximum.")
        if self.order not in ORDERS:
            raise ConfigError(f"campaign.order must be one of {ORDERS}, got {self.order!r}.")
        if self.workers < 1:
            raise ConfigError(f"campaign.workers must be at least 1, got {self.workers}.")
        if self.family is CircuitFamily.MZI_1Q and self.alpha_points != 1:
            raise ConfigError("The single-qubit circuit has no alpha axis; set grid.alpha_points = 1.")

    @classmethod
    def single_qubit(cls, **kwargs) -> "CampaignConfig":
        """C = 401 evenly spaced phases of the one-qubit interferometer."""
        kwargs.setdefault("phi_points", SINGLE_QUBIT_POINTS)
        return cls(family=CircuitFamily.MZI_1Q, alpha_points=1, **kwargs)

    @property
    def size(self) -> int:
        return self.phi_points * self.alpha_points

    def grid(self):
        """(phi, alpha) of every grid point, index = alpha_index * phi_points + phi_index."""
        phi = np.linspace(self.phi_min, self.phi_max, self.phi_points)
        if self.alpha_points > 1:
            alpha = np.linspace(self.alpha_min, self.alpha_max, self.alpha_points)
        else:
            alpha = np.array([self.alpha_min])
        alpha_grid, phi_grid = np.meshgrid(alpha, phi, indexing="ij")
        return phi_grid.ravel(), alpha_grid.ravel()

    def to_flat(self) -> Dict[str, str]:
        """Dotted key-value form, the same schema the config files use."""
        flat = {
            "campaign.family": self.family.name,
            "campaign.shots": str(self.shots),
            "campaign.order": self.order,
            "campaign.seed": str(self.seed),
            "grid.phi_points": str(self.phi_points),
            "grid.alpha_points": str(self.alpha_points),
            "grid.phi_min": repr(self.phi_min),
            "grid.phi_max": repr(self.phi_max),
            "grid.alpha_min": repr(self.alpha_min),
            "grid.alpha_max": repr(self.alpha_max),
            "bias.variant": self.variant.name,
        }
        for k, value in enumerate(self.sqge.as_array(), start=1):
            flat[f"sqge.theta{k}"] = repr(float(value))
        for k, value in enumerate(self.bias.as_array(), start=1):
            flat[f"bias.beta{k}"] = repr(float(value))
        for name in ("qi_p01", "qi_p10", "qd_p01", "qd_p10"):
            flat[f"readout.{name}"] = repr(float(getattr(self.readout, name)))
        flat["mixture.eta"] = repr(float(self.mixture.eta))
        flat["mixture.epsilon"] = repr(float(self.mixture.epsilon))
        return flat


def _angle(text: str) -> float:
    """Floats, optionally written as multiples of pi ('0.25pi', 'pi')."""
    text = text.strip().lower()
    if text.endswith("pi"):
        factor = text[:-2].strip().rstrip("*").strip()
        if factor in ("", "+", "-"):
            factor += "1"
        return float(factor) * math.pi
    return float(text)


def _family(text: str) -> CircuitFamily:
    return CircuitFamily[text.strip().upper()]


def _variant(text: str) -> BcnotVariant:
    return BcnotVariant[text.strip().upper()]


_TOP_LEVEL: Dict[str, tuple] = {
    "campaign.family": ("family", _family),
    "campaign.shots": ("shots", int),
    "campaign.order": ("order", str.strip),
    "campaign.seed": ("seed", int),
    "campaign.workers": ("workers", int),
    "campaign.output_dir": ("output_dir", str.strip),
    "grid.phi_points": ("phi_points", int),
    "grid.alpha_points": ("alpha_points", int),
    "grid.phi_min": ("phi_min", _angle),
    "grid.phi_max": ("phi_max", _angle),
    "grid.alpha_min": ("alpha_min", _angle),
    "grid.alpha_max": ("alpha_max", _angle),
    "bias.variant": ("variant", _variant),
}

_NESTED: Dict[str, tuple] = {
    **{f"sqge.theta{k}": ("sqge", f"theta{k}") for k in range(1, 6)},
    **{f"bias.beta{k}": ("bias", f"beta{k}") for k in range(1, 6)},
    **{f"readout.{n}": ("readout", n) for n in ("qi_p01", "qi_p10", "qd_p01", "qd_p10")},
    "mixture.eta": ("mixture", "eta"),
    "mixture.epsilon": ("mixture", "epsilon"),
}

_GROUPS = ("sqge", "bias", "readout", "mixture")


def config_from_flat(values: Dict[str, Optional[str]], base: Optional[CampaignConfig] = None) -> CampaignConfig:
    """Builds a config from dotted keys on top of `base` (defaults when omitted)."""
    base = base or CampaignConfig()
    top: Dict[str, object] = {}
    nested: Dict[str, Dict[str, float]] = {group: {} for group in _GROUPS}
    for key, raw in values.items():
        key = key.strip()
        if raw is None:
            raise ConfigError(f"Key {key!r} has no value.")
        try:
            if key in _TOP_LEVEL:
                attribute, parse = _TOP_LEVEL[key]
                top[attribute] = parse(raw)
            elif key in _NESTED:
                group, attribute = _NESTED[key]
                nested[group][attribute] = _angle(raw) if group == "sqge" else float(raw)
            else:
                raise ConfigError(f"Unknown configuration key {key!r}.")
        except (KeyError, ValueError) as e:
            raise ConfigError(f"Invalid value {raw!r} for {key}: {e}") from e

    for group, updates in nested.items():
        if updates:
            try:
                top[group] = replace(getattr(base, group), **updates)
            except ValueError as e:
                raise ConfigError(str(e)) from e
    if top.get("family", base.family) is CircuitFamily.MZI_1Q:
        top.setdefault("alpha_points", 1)
    return replace(base, **top)


def load_config(path: str) -> CampaignConfig:
    """Reads a `key = value` file with dotted section keys."""
    if not os.path.exists(path):
        raise ConfigError(f"Config file not found: {path}")
    values = dotenv_values(path)
    logger.info("Loaded %d keys from %s", len(values), path)
    return config_from_flat(values)


def environment_overrides() -> Dict[str, object]:
    """Defaults from WHICHPATH_* variables (loaded from .env by the entry script)."""
    overrides: Dict[str, object] = {}
    try:
        if os.getenv("WHICHPATH_WORKERS"):
            overrides["workers"] = int(os.getenv("WHICHPATH_WORKERS"))
        if os.getenv("WHICHPATH_SEED"):
            overrides["seed"] = int(os.getenv("WHICHPATH_SEED"))
    except ValueError as e:
        raise ConfigError(f"Invalid WHICHPATH_* environment value: {e}") from e
    if os.getenv("WHICHPATH_OUTPUT_DIR"):
        overrides["output_dir"] = os.getenv("WHICHPATH_OUTPUT_DIR")
    return overrides


def with_overrides(config: CampaignConfig, **overrides) -> CampaignConfig:
    """Applies non-None overrides (CLI flags win over the environment, which wins over the file)."""
    updates = {k: v for k, v in overrides.items() if v is not None}
    return replace(config, **updates) if updates else config
