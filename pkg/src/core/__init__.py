from .errors import (
    ConfigError,
    DatasetError,
    DegenerateConditionError,
    InsufficientShotsError,
    NonConvergenceError,
    NonUnitaryError,
    OutOfBoundsError,
    SingularCalibrationError,
    WhichPathError,
    WrongFamilyError,
)
from .types import (
    BcnotVariant,
    BiasParams,
    CircuitConfig,
    CircuitFamily,
    Estimate,
    GateTier,
    MixtureModel,
    Observable,
    OutcomeCounts,
    ReadoutModel,
    RunsTestResult,
    SqgeParams,
)

__all__ = [
    "BcnotVariant",
    "BiasParams",
    "CircuitConfig",
    "CircuitFamily",
    "Estimate",
    "GateTier",
    "MixtureModel",
    "Observable",
    "OutcomeCounts",
    "ReadoutModel",
    "RunsTestResult",
    "SqgeParams",
    "WhichPathError",
    "NonUnitaryError",
    "WrongFamilyError",
    "DegenerateConditionError",
    "InsufficientShotsError",
    "SingularCalibrationError",
    "OutOfBoundsError",
    "NonConvergenceError",
    "ConfigError",
    "DatasetError",
]
