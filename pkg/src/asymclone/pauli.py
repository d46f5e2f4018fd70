"""Bell basis utilities and the cloning network on a purified input.

Feeding half of a maximally entangled pair |Phi+> on (r, a0) through the
cloner turns the network into a map on Bell amplitudes: a preparation
expanded as X1|Phi+> + X2|Phi-> + X3|Psi+> + X4|Psi-> on (a1, b1) comes
out as sum_j X_j |B_j>_{r a0} |B_j>_{a1 b1}, i.e. Bell-diagonal with the
input amplitudes on the diagonal.

Bell order is fixed everywhere as (Phi+, Phi-, Psi+, Psi-).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cloner import cloning_network
from .qstate import StateVector, reorder, tensor

BELL_NAMES = ("phi_plus", "phi_minus", "psi_plus", "psi_minus")

# columns are Phi+, Phi-, Psi+, Psi- over the computational basis 00,01,10,11
_BELL_MATRIX = np.array(
    [
        [1.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 1.0],
        [0.0, 0.0, 1.0, -1.0],
        [1.0, -1.0, 0.0, 0.0],
    ],
    dtype=complex,
) / np.sqrt(2.0)

COEFF_NORM_TOL = 1e-10


@dataclass(frozen=True)
class BellCoefficients:
    """Amplitudes over (Phi+, Phi-, Psi+, Psi-)."""

    x1: complex
    x2: complex
    x3: complex
    x4: complex

    def __post_init__(self):
        norm_sq = sum(abs(x) ** 2 for x in (self.x1, self.x2, self.x3, self.x4))
        if abs(norm_sq - 1.0) > COEFF_NORM_TOL:
            raise ValueError(f"Bell coefficients not normalized: sum |x|^2 = {norm_sq!r}")

    def as_array(self) -> np.ndarray:
        return np.array([self.x1, self.x2, self.x3, self.x4], dtype=complex)


def bell_basis(labels: tuple[str, str] = ("a1", "b1")) -> tuple[StateVector, ...]:
    """The four Bell states in the fixed order (Phi+, Phi-, Psi+, Psi-)."""
    return tuple(StateVector(_BELL_MATRIX[:, k], labels) for k in range(4))


def bell_expand(coeffs: BellCoefficients, labels: tuple[str, str] = ("a1", "b1")) -> StateVector:
    """Computational-basis state with the given Bell amplitudes."""
    return StateVector(_BELL_MATRIX @ coeffs.as_array(), labels)


def bell_components(state: StateVector) -> np.ndarray:
    """Bell amplitudes of a two-qubit state, in the fixed order."""
    if state.n_qubits != 2:
        raise ValueError(f"need a two-qubit state, got {state.n_qubits} qubits")
    return _BELL_MATRIX.conj().T @ state.amplitudes


def run_pauli_cloner(prep: BellCoefficients) -> StateVector:
    """Run the network on |Phi+>_{r a0} tensored with the Bell-expanded prep."""
    purified = StateVector(_BELL_MATRIX[:, 0], ("r", "a0"))
    joint = tensor(purified, bell_expand(prep, ("a1", "b1")))
    return cloning_network(joint)


def bell_decompose(
    state: StateVector,
    pairing: tuple[tuple[str, str], tuple[str, str]] = (("r", "a0"), ("a1", "b1")),
) -> np.ndarray:
    """Coefficients of a four-qubit state over Bell x Bell for the given pairing.

    Entry [j, k] is the amplitude on B_j of the first pair times B_k of the
    second pair; the squared magnitudes sum to 1.
    """
    if state.n_qubits != 4:
        raise ValueError(f"need a four-qubit state, got {state.n_qubits} qubits")
    order = pairing[0] + pairing[1]
    if sorted(order) != sorted(state.labels):
        raise ValueError(f"pairing {pairing} does not cover the register {state.labels}")
    amps = reorder(state, order).amplitudes.reshape(4, 4)
    return _BELL_MATRIX.conj().T @ amps @ _BELL_MATRIX.conj()
