from typing import Optional


class WhichPathError(Exception):
    """Base class for every error raised by the simulator and its analysis pipeline."""


class NonUnitaryError(WhichPathError):
    """An operator expected to be unitary failed the unitarity check."""

    def __init__(self, deviation: float, tolerance: float):
        super().__init__(f"Operator is not unitary: max |U^dag U - I| = {deviation:.3e} > {tolerance:.1e}")
        self.deviation = deviation
        self.tolerance = tolerance


class WrongFamilyError(WhichPathError):
    """An observable was requested from a circuit family that does not measure it."""


class DegenerateConditionError(WhichPathError):
    """A conditional quantity was requested on an event of (numerically) zero probability."""

    def __init__(self, message: str, limit: Optional[float] = None):
        super().__init__(message)
        # Two-sided limit along phi, when the ratio has one.
        self.limit = limit


class InsufficientShotsError(WhichPathError):
    """Too few shots for the requested estimator."""


class SingularCalibrationError(WhichPathError):
    """The readout calibration matrix cannot be inverted."""


class OutOfBoundsError(WhichPathError):
    """A model parameter lies outside its fitting bounds."""


class NonConvergenceError(WhichPathError):
    """The optimizer failed on every start of the multi-start budget."""


class DatasetError(WhichPathError, ValueError):
    """A dataset is malformed or too small for the requested fit or statistic."""


class ConfigError(WhichPathError, ValueError):
    """Invalid campaign or analysis configuration."""
