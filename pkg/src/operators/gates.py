"""Gate library: device single-qubit gates, their biased variants and the biased CNOT family."""

import numpy as np

from ..core import BcnotVariant, BiasParams, SqgeParams
from .linalg import I2, PAULI_X, PAULI_Y, PAULI_Z, S_DAG, frozen, rx, tensor

_SQRT2 = np.sqrt(2.0)


def _sin_over_gamma(gamma: float) -> float:
    """sin(gamma pi / 4) / gamma, equal to pi / 4 at gamma = 0."""
    return float(np.pi / 4 * np.sinc(gamma / 4))


def u1(y: float) -> np.ndarray:
    return frozen([[1.0, 0.0], [0.0, np.exp(1j * y)]])


def u2(x: float, y: float) -> np.ndarray:
    return frozen(np.array([[1.0, -np.exp(1j * y)], [np.exp(1j * x), np.exp(1j * (x + y))]]) / _SQRT2)


def biased_u2_qi(x: float, y: float, sqge: SqgeParams) -> np.ndarray:
    return u2(x + sqge.theta1, y + sqge.theta2)


def biased_u2_qd(x: float, y: float, sqge: SqgeParams) -> np.ndarray:
    return u2(x + sqge.theta3, y + sqge.theta4)


def biased_u1_qd(y: float, sqge: SqgeParams) -> np.ndarray:
    return u1(y + sqge.theta5)


def optimal_readout(alpha: float) -> np.ndarray:
    """O_alpha^dag, the detector rotation onto the minimum-error basis for |delta_0>, |delta_1>."""
    phase = 1j * np.exp(-0.5j * alpha)
    return frozen(np.array([[1.0, phase], [1.0, -phase]]) / _SQRT2)


def cnot() -> np.ndarray:
    """CNOT with the interferometer qubit as control."""
    return frozen([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])


def u_zx(theta: float) -> np.ndarray:
    """Cross-resonance propagator exp(-i theta/2 ZX)."""
    return frozen(np.cos(theta / 2) * np.eye(4) - 1j * np.sin(theta / 2) * np.kron(PAULI_Z, PAULI_X))


def m_local() -> np.ndarray:
    """Local correction M = S^dag (x) Rx(-pi/2), so that CNOT = U_ZX(pi/2) . M."""
    return tensor(S_DAG, rx(-np.pi / 2))


def effective_hamiltonian(bias: BiasParams) -> np.ndarray:
    """Generator H with U_eff = exp(-i H): (pi/4)(ZX + b1 IY + b2 IZ + b3 IX + b4 ZY + b5 ZZ)."""
    pauli = {"I": I2, "X": PAULI_X, "Y": PAULI_Y, "Z": PAULI_Z}
    terms = [
        (1.0, "ZX"),
        (bias.beta1, "IY"),
        (bias.beta2, "IZ"),
        (bias.beta3, "IX"),
        (bias.beta4, "ZY"),
        (bias.beta5, "ZZ"),
    ]
    generator = sum(weight * np.kron(pauli[label[0]], pauli[label[1]]) for weight, label in terms)
    return frozen(np.pi / 4 * generator)


def gamma_c(bias: BiasParams) -> tuple:
    """(gamma_0, gamma_1): norms of the target rotation axis for each control value."""
    b1, b2, b3, b4, b5 = bias.as_array()
    return tuple(
        float(np.sqrt((b1 + sign * b4) ** 2 + (b2 + sign * b5) ** 2 + (b3 + sign) ** 2)) for sign in (1.0, -1.0)
    )


def u_eff(bias: BiasParams) -> np.ndarray:
    """Biased entangler U_eff(B) built entrywise from its closed form.

    The matrix is block diagonal in the control qubit; each block is a target rotation of
    angle gamma_c * pi / 2 about the axis (b3 + (-1)^c, b1 + (-1)^c b4, b2 + (-1)^c b5).
    """
    b1, b2, b3, b4, b5 = bias.as_array()
    gammas = gamma_c(bias)
    matrix = np.zeros((4, 4), dtype=complex)
    for c in (0, 1):
        sign = (-1.0) ** c
        gamma = gammas[c]
        cos_term = np.cos(gamma * np.pi / 4)
        sin_term = _sin_over_gamma(gamma)
        for t in (0, 1):
            for t_out in (0, 1):
                diagonal = (t + t_out - 1) ** 2
                flip = t + t_out - 2 * t * t_out
                matrix[2 * c + t_out, 2 * c + t] = cos_term * diagonal + sin_term * (
                    1j * (t + t_out - 1) * (b2 + sign * b5)
                    - flip * (1j * (b3 + sign) + (-1.0) ** t_out * (b1 + sign * b4))
                )
    return frozen(matrix)


def bcnot5_closed_form(bias: BiasParams) -> np.ndarray:
    """Entrywise transcription of U_eff(B) . M as a single formula over (c', t', c, t)."""
    b1, b2, b3, b4, b5 = bias.as_array()
    gammas = gamma_c(bias)
    matrix = np.zeros((4, 4), dtype=complex)
    for c_out in (0, 1):
        for t_out in (0, 1):
            for c in (0, 1):
                for t in (0, 1):
                    sign = (-1.0) ** c
                    gamma = gammas[c]
                    prefactor = (1j * (c_out - 1) - c * c_out * (1 + 1j) + 1j * c) / _SQRT2
                    cos_part = np.cos(gamma * np.pi / 4) * (t * (1 + 1j) * (2 * t_out - 1) - (1 + 1j) * t_out + 1j)
                    sin_part = _sin_over_gamma(gamma) * (
                        b1
                        + b2
                        + 1j * b3
                        + sign * (b4 + b5 + 1j)
                        + t
                        * (1 + 1j)
                        * (-b1 + 1j * (b2 + b3 * (2 * t_out - 1) + sign * (1j * b4 + b5 + 2 * t_out - 1)))
                        + t_out * (1j - 1) * (b1 + 1j * b2 - b3 + sign * (b4 + 1j * b5 - 1))
                    )
                    matrix[2 * c_out + t_out, 2 * c + t] = prefactor * (cos_part + sin_part)
    return frozen(matrix)


def bcnot(
    bias: BiasParams,
    variant: BcnotVariant = BcnotVariant.PLAIN,
    order2: bool = False,
) -> np.ndarray:
    """Biased CNOT under one of the four orderings of M around U_eff(B).

    Args:
        bias: bias ratios relative to the ZX coupling.
        variant: operator ordering.
        order2: switch off the crosstalk terms (IX, ZY, ZZ).

    Returns:
        The 4x4 gate; the exact CNOT when every bias vanishes.
    """
    if order2:
        bias = bias.order2()
    if bias.is_zero():
        return cnot()
    entangler = u_eff(bias)
    if variant is BcnotVariant.PLAIN:
        return frozen(entangler @ m_local())
    if variant is BcnotVariant.PRIMED:
        return frozen(m_local() @ entangler)
    phase_gate = tensor(S_DAG, I2)
    x_rotation = tensor(I2, rx(-np.pi / 2))
    if variant is BcnotVariant.DOUBLE_PRIMED:
        return frozen(phase_gate @ entangler @ x_rotation)
    if variant is BcnotVariant.TRIPLE_PRIMED:
        return frozen(x_rotation @ entangler @ phase_gate)
    raise ValueError(f"Unknown BCNOT variant: {variant}")
