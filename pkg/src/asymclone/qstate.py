"""Exact complex linear algebra for small registers of named qubits.

States are dense complex amplitude vectors over at most four qubits. Every
qubit carries a name, and all addressing (gates, partial traces) goes
through names, never raw indices. The single index convention lives here:
bit k of a basis index, most significant bit first, belongs to labels[k].
So for labels ("a", "b") the amplitude order is |00>, |01>, |10>, |11>.

All values are immutable after construction and every operation is a pure
function, so everything here is safe to use from multiple threads.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

MAX_QUBITS = 4
NORM_TOL = 1e-12
HERMITIAN_TOL = 1e-12
EIGENVALUE_FLOOR = -1e-10
BLOCH_NORM_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class StateVector:
    """Normalized pure state of a named qubit register."""

    amplitudes: np.ndarray
    labels: tuple[str, ...]

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        labels = tuple(self.labels)
        if not 1 <= len(labels) <= MAX_QUBITS:
            raise ValueError(
                f"register must hold 1..{MAX_QUBITS} qubits, got {len(labels)}"
            )
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate qubit labels in {labels}")
        if amps.shape != (2 ** len(labels),):
            raise ValueError(
                f"{len(labels)}-qubit register needs {2 ** len(labels)} amplitudes, "
                f"got {amps.shape[0]}"
            )
        norm_sq = float(np.sum(np.abs(amps) ** 2))
        if abs(norm_sq - 1.0) > NORM_TOL:
            raise ValueError(f"state is not normalized: sum |amp|^2 = {norm_sq!r}")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "labels", labels)

    @property
    def n_qubits(self) -> int:
        return len(self.labels)

    def axis(self, label: str) -> int:
        """Tensor axis of a named qubit (0 = most significant index bit)."""
        try:
            return self.labels.index(label)
        except ValueError:
            raise ValueError(
                f"unknown qubit label {label!r}; register has {self.labels}"
            ) from None


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite operator on a register."""

    entries: np.ndarray
    labels: tuple[str, ...]

    def __post_init__(self):
        mat = np.array(self.entries, dtype=complex)
        labels = tuple(self.labels)
        dim = 2 ** len(labels)
        if mat.shape != (dim, dim):
            raise ValueError(
                f"{len(labels)}-qubit density matrix must be {dim}x{dim}, got {mat.shape}"
            )
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate qubit labels in {labels}")
        if np.max(np.abs(mat - mat.conj().T)) > HERMITIAN_TOL:
            raise ValueError("density matrix is not Hermitian")
        trace = complex(np.trace(mat))
        if abs(trace - 1.0) > HERMITIAN_TOL:
            raise ValueError(f"density matrix trace is {trace!r}, expected 1")
        if float(np.min(np.linalg.eigvalsh(mat))) < EIGENVALUE_FLOOR:
            raise ValueError("density matrix has a negative eigenvalue")
        mat.flags.writeable = False
        object.__setattr__(self, "entries", mat)
        object.__setattr__(self, "labels", labels)

    @property
    def n_qubits(self) -> int:
        return len(self.labels)

    def axis(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise ValueError(
                f"unknown qubit label {label!r}; register has {self.labels}"
            ) from None


@dataclass(frozen=True)
class BlochVector:
    """Real three-vector (mx, my, mz) of a single-qubit density operator."""

    mx: float
    my: float
    mz: float

    def __post_init__(self):
        norm_sq = self.mx**2 + self.my**2 + self.mz**2
        if norm_sq > 1.0 + BLOCH_NORM_TOL:
            raise ValueError(f"Bloch vector leaves the unit ball: |m|^2 = {norm_sq!r}")

    def norm(self) -> float:
        return float(np.sqrt(self.mx**2 + self.my**2 + self.mz**2))

    def as_array(self) -> np.ndarray:
        return np.array([self.mx, self.my, self.mz])


def tensor(a: StateVector, b: StateVector) -> StateVector:
    """Kronecker product of two registers; a's qubits become the high bits."""
    if set(a.labels) & set(b.labels):
        overlap_labels = sorted(set(a.labels) & set(b.labels))
        raise ValueError(f"label collision in tensor product: {overlap_labels}")
    if a.n_qubits + b.n_qubits > MAX_QUBITS:
        raise ValueError(
            f"tensor product would need {a.n_qubits + b.n_qubits} qubits, "
            f"register cap is {MAX_QUBITS}"
        )
    return StateVector(np.kron(a.amplitudes, b.amplitudes), a.labels + b.labels)


def to_density(psi: StateVector) -> DensityMatrix:
    """Projector |psi><psi| as a density matrix."""
    return DensityMatrix(np.outer(psi.amplitudes, psi.amplitudes.conj()), psi.labels)


def partial_trace(rho: DensityMatrix, keep: Iterable[str]) -> DensityMatrix:
    """Reduce a density matrix to the named qubits, tracing out the rest.

    Kept qubits stay in their register order regardless of the order in
    which ``keep`` lists them.
    """
    keep_set = set(keep)
    if not keep_set:
        raise ValueError("partial trace must keep at least one qubit")
    unknown = keep_set - set(rho.labels)
    if unknown:
        raise ValueError(f"unknown qubit labels {sorted(unknown)}; register has {rho.labels}")

    kept_labels = tuple(lab for lab in rho.labels if lab in keep_set)
    traced_axes = [i for i, lab in enumerate(rho.labels) if lab not in keep_set]

    n = rho.n_qubits
    work = rho.entries.reshape((2,) * (2 * n))
    remaining = n
    for ax in sorted(traced_axes, reverse=True):
        work = np.trace(work, axis1=ax, axis2=ax + remaining)
        remaining -= 1
    dim = 2 ** len(kept_labels)
    return DensityMatrix(work.reshape(dim, dim), kept_labels)


def fidelity_pure(psi: StateVector, rho: DensityMatrix) -> float:
    """Overlap <psi|rho|psi> between a pure state and a density operator.

    Labels are ignored; only the dimensions must agree, so a clone on one
    register can be scored against an ideal state on another.
    """
    if psi.amplitudes.shape[0] != rho.entries.shape[0]:
        raise ValueError(
            f"dimension mismatch: state has {psi.amplitudes.shape[0]}, "
            f"density matrix has {rho.entries.shape[0]}"
        )
    value = np.vdot(psi.amplitudes, rho.entries @ psi.amplitudes)
    return float(value.real)


def bloch_vector(rho: DensityMatrix) -> BlochVector:
    """Bloch vector of a single-qubit density matrix, rho = (1 + m.sigma)/2."""
    if rho.n_qubits != 1:
        raise ValueError("Bloch vector is defined for single-qubit operators only")
    m = rho.entries
    return BlochVector(
        mx=float(2.0 * m[1, 0].real),
        my=float(2.0 * m[1, 0].imag),
        mz=float((m[0, 0] - m[1, 1]).real),
    )


def from_bloch(m: BlochVector, label: str = "q") -> DensityMatrix:
    """Reconstruct the single-qubit density matrix (1 + m.sigma)/2."""
    entries = 0.5 * np.array(
        [
            [1.0 + m.mz, m.mx - 1j * m.my],
            [m.mx + 1j * m.my, 1.0 - m.mz],
        ],
        dtype=complex,
    )
    return DensityMatrix(entries, (label,))


def reorder(psi: StateVector, labels: Sequence[str]) -> StateVector:
    """Permute the register so the qubits appear in the given label order."""
    new_labels = tuple(labels)
    if sorted(new_labels) != sorted(psi.labels):
        raise ValueError(f"{new_labels} is not a permutation of {psi.labels}")
    if new_labels == psi.labels:
        return psi
    perm = [psi.axis(lab) for lab in new_labels]
    amps = psi.amplitudes.reshape((2,) * psi.n_qubits).transpose(perm).reshape(-1)
    return StateVector(amps, new_labels)


def overlap(a: StateVector, b: StateVector) -> complex:
    """Inner product <a|b>; b is permuted to a's qubit order first."""
    if sorted(a.labels) != sorted(b.labels):
        raise ValueError(f"registers differ: {a.labels} vs {b.labels}")
    return complex(np.vdot(a.amplitudes, reorder(b, a.labels).amplitudes))


def basis_state(bits: str | Sequence[int], labels: Sequence[str]) -> StateVector:
    """Computational basis state, e.g. basis_state("00", ("a1", "b1"))."""
    values = [int(b) for b in bits]
    if len(values) != len(labels) or any(v not in (0, 1) for v in values):
        raise ValueError(f"bad bit pattern {bits!r} for labels {tuple(labels)}")
    index = 0
    for v in values:
        index = (index << 1) | v
    amps = np.zeros(2 ** len(values), dtype=complex)
    amps[index] = 1.0
    return StateVector(amps, tuple(labels))


def single_qubit(alpha0: complex, alpha1: complex, label: str = "q") -> StateVector:
    """One-qubit state alpha0|0> + alpha1|1> (must already be normalized)."""
    return StateVector(np.array([alpha0, alpha1], dtype=complex), (label,))


_SQRT_HALF = 1.0 / np.sqrt(2.0)

_NAMED_AMPLITUDES = {
    "0": (1.0, 0.0),
    "1": (0.0, 1.0),
    "+": (_SQRT_HALF, _SQRT_HALF),
    "-": (_SQRT_HALF, -_SQRT_HALF),
    "+i": (_SQRT_HALF, 1j * _SQRT_HALF),
    "-i": (_SQRT_HALF, -1j * _SQRT_HALF),
}


def named_state(name: str, label: str = "q") -> StateVector:
    """One of the six axis states: 0, 1, +, -, +i, -i."""
    try:
        alpha0, alpha1 = _NAMED_AMPLITUDES[name]
    except KeyError:
        raise ValueError(
            f"unknown state name {name!r}; expected one of {sorted(_NAMED_AMPLITUDES)}"
        ) from None
    return single_qubit(alpha0, alpha1, label)


def random_state(labels: Sequence[str], rng: np.random.Generator | None = None) -> StateVector:
    """Haar-like random pure state on the named register."""
    if rng is None:
        rng = np.random.default_rng()
    dim = 2 ** len(tuple(labels))
    amps = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return StateVector(amps / np.linalg.norm(amps), tuple(labels))
