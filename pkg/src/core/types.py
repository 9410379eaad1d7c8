from dataclasses import dataclass, field
from enum import Enum, auto
from typing import Tuple

import numpy as np

from .errors import ConfigError, DatasetError


class CircuitFamily(Enum):
    """The five circuits of the experiment, named after what they read out."""

    WP_X = auto()  # P_i^dag = H, P_d^dag = O_alpha^dag
    WP_Z = auto()  # P_i^dag = 1, P_d^dag = O_alpha^dag
    ERASER_X = auto()  # P_i^dag = H, P_d^dag = 1
    ERASER_Z = auto()  # P_i^dag = 1, P_d^dag = 1
    MZI_1Q = auto()  # single-qubit interferometer

    @property
    def is_two_qubit(self) -> bool:
        return self is not CircuitFamily.MZI_1Q

    @property
    def interferometer_in_x(self) -> bool:
        """True when the interferometer qubit is read out in the X basis (G_i = U2(0, pi))."""
        return self in (CircuitFamily.WP_X, CircuitFamily.ERASER_X, CircuitFamily.MZI_1Q)

    @property
    def detector_optimal(self) -> bool:
        """True when the detector is read out in the optimal (minimum-error) basis."""
        return self in (CircuitFamily.WP_X, CircuitFamily.WP_Z)


class Observable(Enum):
    """Fit and estimate targets. Values are the names used in CSV files."""

    X = "X"
    X0 = "X0"
    X1 = "X1"
    D = "D"
    DM = "Dm"
    X_SINGLE = "X1q"

    @property
    def family(self) -> CircuitFamily:
        """The circuit family whose model produces this observable."""
        return _OBSERVABLE_FAMILY[self]


_OBSERVABLE_FAMILY = {
    Observable.X: CircuitFamily.WP_X,
    Observable.X0: CircuitFamily.ERASER_X,
    Observable.X1: CircuitFamily.ERASER_X,
    Observable.D: CircuitFamily.WP_Z,
    Observable.DM: CircuitFamily.ERASER_Z,
    Observable.X_SINGLE: CircuitFamily.MZI_1Q,
}


class GateTier(Enum):
    """Gate-model hierarchy used when fitting, from ideal to fully biased."""

    IDEAL = "cnot"
    SQGE = "cnot+sqge"
    BCNOT2 = "bcnot2+sqge"
    BCNOT5 = "bcnot5+sqge"


class BcnotVariant(Enum):
    """Operator orderings of the local correction M around the effective entangler."""

    PLAIN = auto()  # U_eff . M
    PRIMED = auto()  # M . U_eff
    DOUBLE_PRIMED = auto()  # (S^dag x 1) . U_eff . (1 x Rx(-pi/2))
    TRIPLE_PRIMED = auto()  # (1 x Rx(-pi/2)) . U_eff . (S^dag x 1)


@dataclass(frozen=True)
class SqgeParams:
    """Constant angle biases of the single-qubit gates (radians).

    theta1, theta2 bias U2 on the interferometer qubit, theta3, theta4 bias U2 on the
    detector and theta5 biases U1 on the detector.
    """

    theta1: float = 0.0
    theta2: float = 0.0
    theta3: float = 0.0
    theta4: float = 0.0
    theta5: float = 0.0

    @classmethod
    def from_array(cls, values) -> "SqgeParams":
        return cls(*(float(v) for v in values))

    def as_array(self) -> np.ndarray:
        return np.array([self.theta1, self.theta2, self.theta3, self.theta4, self.theta5])

    def is_zero(self) -> bool:
        return not np.any(self.as_array())


@dataclass(frozen=True)
class BiasParams:
    """Bias ratios of the IY, IZ, IX, ZY and ZZ error terms relative to ZX."""

    beta1: float = 0.0
    beta2: float = 0.0
    beta3: float = 0.0
    beta4: float = 0.0
    beta5: float = 0.0

    @classmethod
    def from_array(cls, values) -> "BiasParams":
        return cls(*(float(v) for v in values))

    def as_array(self) -> np.ndarray:
        return np.array([self.beta1, self.beta2, self.beta3, self.beta4, self.beta5])

    def is_zero(self) -> bool:
        return not np.any(self.as_array())

    def order2(self) -> "BiasParams":
        """The two-parameter model: crosstalk terms (IX, ZY, ZZ) switched off."""
        return BiasParams(self.beta1, self.beta2)

    def primed_mapping(self) -> "BiasParams":
        """Parameters under which the plain ordering reproduces the primed one."""
        return BiasParams(self.beta2, -self.beta1, self.beta3, self.beta5, -self.beta4)


@dataclass(frozen=True)
class CircuitConfig:
    """One circuit of a family at a single (phi, alpha) point with its gate models."""

    family: CircuitFamily
    phi: float
    alpha: float = 0.0
    sqge: SqgeParams = field(default_factory=SqgeParams)
    bias: BiasParams = field(default_factory=BiasParams)
    bcnot_variant: BcnotVariant = BcnotVariant.PLAIN


@dataclass(frozen=True)
class ReadoutModel:
    """Independent per-qubit readout confusion.

    p01 is the probability of reading 1 when the qubit is in 0, p10 of reading 0 in 1.
    """

    qi_p01: float = 0.0
    qi_p10: float = 0.0
    qd_p01: float = 0.0
    qd_p10: float = 0.0

    def __post_init__(self):
        for name in ("qi_p01", "qi_p10", "qd_p01", "qd_p10"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ConfigError(f"Readout probability {name}={value} outside [0, 1].")

    @classmethod
    def symmetric(cls, flip: float) -> "ReadoutModel":
        return cls(flip, flip, flip, flip)

    def is_ideal(self) -> bool:
        return self.qi_p01 == self.qi_p10 == self.qd_p01 == self.qd_p10 == 0.0

    def confusion_matrix(self) -> np.ndarray:
        """Column-stochastic 4x4 matrix A[measured, prepared] over |x y>."""
        a_qi = np.array([[1 - self.qi_p01, self.qi_p10], [self.qi_p01, 1 - self.qi_p10]])
        a_qd = np.array([[1 - self.qd_p01, self.qd_p10], [self.qd_p01, 1 - self.qd_p10]])
        return np.kron(a_qi, a_qd)


@dataclass(frozen=True)
class MixtureModel:
    """Incoherent mixture behind the experimental model eta * g + epsilon."""

    eta: float = 1.0
    epsilon: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.eta <= 1.0:
            raise ConfigError(f"Mixture weight eta={self.eta} outside [0, 1].")
        if self.eta == 1.0 and self.epsilon != 0.0:
            raise ConfigError("A nonzero epsilon requires eta < 1.")
        if self.eta < 1.0 and abs(self.epsilon) > 1.0 - self.eta:
            raise ConfigError(f"|epsilon|={abs(self.epsilon)} exceeds 1 - eta={1.0 - self.eta}.")

    def is_identity(self) -> bool:
        return self.eta == 1.0


@dataclass(frozen=True)
class OutcomeCounts:
    """Shot tallies n00, n01, n10, n11 of one circuit at one grid point.

    Single-qubit circuits store their two outcomes on the interferometer bit
    (n00 for 0, n10 for 1) and leave the detector columns at zero.
    """

    counts: Tuple[int, int, int, int]
    shots: int
    seed: int = 0
    phi: float = 0.0
    alpha: float = 0.0

    def __post_init__(self):
        if len(self.counts) != 4:
            raise DatasetError(f"Expected 4 outcome counts, got {len(self.counts)}.")
        if any(c < 0 for c in self.counts):
            raise DatasetError(f"Negative outcome count in {self.counts}.")
        if sum(self.counts) != self.shots:
            raise DatasetError(f"Counts {self.counts} do not sum to S={self.shots}.")

    @property
    def n00(self) -> int:
        return self.counts[0]

    @property
    def n01(self) -> int:
        return self.counts[1]

    @property
    def n10(self) -> int:
        return self.counts[2]

    @property
    def n11(self) -> int:
        return self.counts[3]

    def frequencies(self) -> np.ndarray:
        """Relative frequencies p(xy) in the order 00, 01, 10, 11."""
        return np.asarray(self.counts, dtype=float) / self.shots

    def __repr__(self) -> str:
        return f"OutcomeCounts({self.counts}, S={self.shots}, phi={self.phi:.4f}, alpha={self.alpha:.4f})"


@dataclass(frozen=True)
class Estimate:
    """A point estimate z_j with its standard error sigma_j."""

    value: float
    std_error: float
    shots: int
    phi: float = 0.0
    alpha: float = 0.0
    observable: Observable = Observable.X

    def __post_init__(self):
        if self.std_error < 0:
            raise DatasetError(f"Negative standard error {self.std_error}.")


@dataclass(frozen=True)
class RunsTestResult:
    """Outcome of the Wald-Wolfowitz runs test on a dichotomized residual sequence."""

    n_plus: int
    n_minus: int
    runs: int
    z: float
    p_value: float
    degenerate: bool = False  # all residuals on one side: the test is undefined

    def rejects(self, level: float = 0.05) -> bool:
        """An undefined (degenerate) test never rejects, whatever its reported p-value."""
        return not self.degenerate and self.p_value < level
