"""Dense complex linear algebra for the two-qubit interferometer-detector register.

States are length-4 complex vectors over |x y> = |x>_i (x) |y>_d with index 2x + y, the
interferometer qubit being the first tensor factor. Matrices returned by this module
are read-only numpy arrays; every operation returns a new value.
"""

import logging

import numpy as np

from ..core.constants import NORM_TOL, UNITARY_TOL
from ..core.errors import NonUnitaryError

logger = logging.getLogger(__name__)


def frozen(matrix) -> np.ndarray:
    """Returns a read-only complex copy of `matrix`."""
    result = np.array(matrix, dtype=complex)
    result.flags.writeable = False
    return result


I2 = frozen(np.eye(2))
I4 = frozen(np.eye(4))
PAULI_X = frozen([[0, 1], [1, 0]])
PAULI_Y = frozen([[0, -1j], [1j, 0]])
PAULI_Z = frozen([[1, 0], [0, -1]])
HADAMARD = frozen(np.array([[1, 1], [1, -1]]) / np.sqrt(2))
S_DAG = frozen([[1, 0], [0, -1j]])


def rx(theta: float) -> np.ndarray:
    """Rotation exp(-i theta X / 2)."""
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return frozen([[c, -1j * s], [-1j * s, c]])


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """a (x) b, with `a` acting on the interferometer qubit and `b` on the detector."""
    return frozen(np.kron(a, b))


def unitarity_deviation(u: np.ndarray) -> float:
    """max |U^dag U - I| entrywise."""
    u = np.asarray(u)
    return float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))))


def is_unitary(u: np.ndarray, tol: float = UNITARY_TOL) -> bool:
    return unitarity_deviation(u) < tol


def require_unitary(u: np.ndarray, tol: float = UNITARY_TOL) -> np.ndarray:
    deviation = unitarity_deviation(u)
    if deviation >= tol:
        raise NonUnitaryError(deviation, tol)
    return u


def basis_state(x: int, y: int) -> np.ndarray:
    state = np.zeros(4, dtype=complex)
    state[2 * x + y] = 1.0
    return state


def norm_deviation(state: np.ndarray) -> float:
    return abs(float(np.vdot(state, state).real) - 1.0)


def apply(u: np.ndarray, state: np.ndarray, tol: float = UNITARY_TOL) -> np.ndarray:
    """Applies the unitary `u` to a single state vector."""
    require_unitary(u, tol)
    result = np.asarray(u) @ np.asarray(state, dtype=complex)
    if norm_deviation(result) > NORM_TOL and norm_deviation(state) <= NORM_TOL:
        # Only reachable through accumulated rounding on a marginally unitary input.
        logger.warning("State norm drifted by %.3e after gate application.", norm_deviation(result))
    return result


def probabilities(state: np.ndarray) -> np.ndarray:
    """Outcome probabilities p(xy) = |<xy|state>|^2 (works on batches along the last axis)."""
    return np.abs(np.asarray(state)) ** 2


def concurrence(state: np.ndarray) -> float:
    """Concurrence of a pure two-qubit state, 2|a00 a11 - a01 a10|."""
    a = np.asarray(state)
    return float(2.0 * abs(a[0] * a[3] - a[1] * a[2]))


def apply_local(states: np.ndarray, gate: np.ndarray, qubit: int) -> np.ndarray:
    """Applies a single-qubit gate to qubit 0 (interferometer) or 1 (detector) of a batch.

    Args:
        states: array of shape (N, 4).
        gate: a 2x2 matrix shared by the batch, or an (N, 2, 2) stack of per-state gates.
        qubit: 0 for the interferometer, 1 for the detector.
    """
    grid = states.reshape(-1, 2, 2)
    batched = gate.ndim == 3
    if qubit == 0:
        subscripts = "nij,njy->niy" if batched else "ij,njy->niy"
    elif qubit == 1:
        subscripts = "nij,nxj->nxi" if batched else "ij,nxj->nxi"
    else:
        raise ValueError(f"Qubit index must be 0 or 1, got {qubit}.")
    return np.einsum(subscripts, gate, grid).reshape(-1, 4)


def apply_batch(u: np.ndarray, states: np.ndarray) -> np.ndarray:
    """Applies a 4x4 operator (shared or stacked as (N, 4, 4)) to an (N, 4) batch."""
    if u.ndim == 3:
        return np.einsum("nij,nj->ni", u, states)
    return states @ u.T
