"""Asymmetric cloning: feasibility region, parameter solver, four-CNOT network.

A cloner is specified by a target scaling pair (s0, s1): the original qubit
a0 comes out with its Bloch vector shrunk by s0 and the copy a1 by s1,

    rho_out = s * rho_in + (1 - s)/2 * identity.

The pair is reachable iff s0^2 + s1^2 + s0*s1 - s0 - s1 <= 0, an ellipse
through (1,0), (0,1) and (2/3, 2/3). For a feasible pair the two-qubit
preparation state on (a1, b1) has moduli

    c1 = sqrt((s0+s1)/2),  c2 = sqrt((1-s0)/2),  c4 = sqrt((1-s1)/2)

with the |10> amplitude identically zero, and phases fixed through

    cos(theta1 - theta2) = s1 / sqrt((s0+s1)(1-s0))
    cos(theta1 - theta4) = s0 / sqrt((s0+s1)(1-s1)).

The network itself is four CNOTs on (a0, a1, b1), applied in the order
a0->a1, a0->b1, a1->a0, b1->a0.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gates import apply_cnot
from .qstate import (
    DensityMatrix,
    StateVector,
    bloch_vector,
    fidelity_pure,
    named_state,
    partial_trace,
    tensor,
    to_density,
)

FEASIBLE_TOL = 1e-12
RANGE_TOL = 1e-12
DEGENERATE_TOL = 1e-12
ARCCOS_TOL = 1e-10
BRANCH_RESIDUAL_TOL = 1e-8
BLOCH_INPUT_FLOOR = 1e-9

NETWORK_ORDER = (("a0", "a1"), ("a0", "b1"), ("a1", "a0"), ("b1", "a0"))

PROBE_NAMES = ("0", "1", "+", "-", "+i", "-i")

_BRANCH_ORDER = (("minus", "minus"), ("minus", "plus"), ("plus", "minus"), ("plus", "plus"))


class InfeasibleScalingError(ValueError):
    """Raised when a scaling pair lies outside the reachable region."""


@dataclass(frozen=True)
class ScalingPair:
    """Target shrink factors for the original (s0) and the copy (s1)."""

    s0: float
    s1: float
    feasible: bool
    margin: float
    reason: str | None = None


@dataclass(frozen=True)
class PrepState:
    """Solved preparation state: moduli c and phases theta, |10> amplitude 0."""

    c1: float
    c2: float
    c4: float
    theta1: float
    theta2: float
    theta4: float

    def __post_init__(self):
        for name, c in (("c1", self.c1), ("c2", self.c2), ("c4", self.c4)):
            if not 0.0 <= c <= 1.0 + 1e-12:
                raise ValueError(f"modulus {name} = {c!r} outside [0, 1]")
        norm_sq = self.c1**2 + self.c2**2 + self.c4**2
        if abs(norm_sq - 1.0) > 1e-10:
            raise ValueError(f"moduli are not normalized: sum c^2 = {norm_sq!r}")

    @property
    def as_amplitudes(self) -> np.ndarray:
        """The four complex amplitudes over |00>, |01>, |10>, |11>."""
        return np.array(
            [
                self.c1 * np.exp(1j * self.theta1),
                self.c2 * np.exp(1j * self.theta2),
                0.0,
                self.c4 * np.exp(1j * self.theta4),
            ]
        )

    def as_state(self, labels: tuple[str, str] = ("a1", "b1")) -> StateVector:
        return StateVector(self.as_amplitudes, labels)


@dataclass(frozen=True)
class CloneOutput:
    """Joint output state plus the reduced clones and their scaling estimates."""

    joint: StateVector
    rho_a0: DensityMatrix
    rho_a1: DensityMatrix
    s0_est: float
    s1_est: float
    residual0: float
    residual1: float
    input_state: StateVector

    @property
    def fidelity0(self) -> float:
        return fidelity_pure(self.input_state, self.rho_a0)

    @property
    def fidelity1(self) -> float:
        return fidelity_pure(self.input_state, self.rho_a1)


@dataclass(frozen=True)
class ScalingReport:
    """Outcome of checking a CloneOutput against the scaled-output form."""

    ok: bool
    residual0: float
    residual1: float
    isotropy0: float
    isotropy1: float

    def __bool__(self) -> bool:
        return self.ok


def feasibility(s0: float, s1: float) -> ScalingPair:
    """Evaluate the quadratic margin and classify the pair."""
    s0 = float(s0)
    s1 = float(s1)
    if not (np.isfinite(s0) and np.isfinite(s1)):
        raise ValueError(f"scaling factors must be finite, got ({s0!r}, {s1!r})")
    margin = s0 * s0 + s1 * s1 + s0 * s1 - s0 - s1
    in_range = -RANGE_TOL <= s0 <= 1.0 + RANGE_TOL and -RANGE_TOL <= s1 <= 1.0 + RANGE_TOL
    if not in_range:
        return ScalingPair(s0, s1, False, margin, "scaling factors must lie in [0, 1]")
    if margin > FEASIBLE_TOL:
        return ScalingPair(s0, s1, False, margin, f"margin {margin:.6g} exceeds 0")
    return ScalingPair(s0, s1, True, margin)


def _theta(numerator: float, factor_a: float, factor_b: float, sign: float) -> float:
    # the amplitude this phase multiplies vanishes, so the phase is free
    if factor_a < DEGENERATE_TOL or factor_b < DEGENERATE_TOL:
        return 0.0
    arg = numerator / np.sqrt(factor_a * factor_b)
    if arg > 1.0 + ARCCOS_TOL:
        raise InfeasibleScalingError(
            f"phase equation has no solution: cos value {arg!r} exceeds 1"
        )
    return float(sign * np.arccos(min(arg, 1.0))) + 0.0


def _build_prep(s0: float, s1: float, branch2: str, branch4: str) -> PrepState:
    signs = {"minus": -1.0, "plus": 1.0}
    c1 = float(np.sqrt((s0 + s1) / 2.0))
    c2 = float(np.sqrt((1.0 - s0) / 2.0))
    c4 = float(np.sqrt((1.0 - s1) / 2.0))
    theta2 = _theta(s1, s0 + s1, 1.0 - s0, signs[branch2])
    theta4 = _theta(s0, s0 + s1, 1.0 - s1, signs[branch4])
    return PrepState(c1=c1, c2=c2, c4=c4, theta1=0.0, theta2=theta2, theta4=theta4)


def _probe_residual(prep: PrepState) -> float:
    worst = 0.0
    for name in PROBE_NAMES:
        out = run_cloner(named_state(name, "a0"), prep)
        worst = max(worst, out.residual0, out.residual1)
    return worst


def solve_prep(
    pair: ScalingPair, branch2: str | None = None, branch4: str | None = None
) -> PrepState:
    """Solve the preparation state for a feasible pair.

    Each phase carries a sign freedom. With branches left as None the sign
    combinations are tried in a fixed order against the six-probe residual
    oracle and the first to pass wins, so (minus, minus) takes ties.
    """
    if not pair.feasible:
        raise InfeasibleScalingError(
            f"pair (s0={pair.s0!r}, s1={pair.s1!r}) is infeasible: "
            f"{pair.reason or f'margin {pair.margin:.6g}'}"
        )
    for branch in (branch2, branch4):
        if branch not in (None, "plus", "minus"):
            raise ValueError(f"branch must be 'plus' or 'minus', got {branch!r}")
    s0 = min(max(pair.s0, 0.0), 1.0)
    s1 = min(max(pair.s1, 0.0), 1.0)

    if branch2 is not None and branch4 is not None:
        return _build_prep(s0, s1, branch2, branch4)

    candidates = [
        (b2, b4)
        for b2, b4 in _BRANCH_ORDER
        if branch2 in (None, b2) and branch4 in (None, b4)
    ]
    for b2, b4 in candidates:
        prep = _build_prep(s0, s1, b2, b4)
        if _probe_residual(prep) < BRANCH_RESIDUAL_TOL:
            return prep
    raise InfeasibleScalingError(
        f"no phase branch reproduces the scaled-output form for "
        f"(s0={pair.s0!r}, s1={pair.s1!r})"
    )


def cloning_network(state: StateVector) -> StateVector:
    """Apply the four CNOTs to any register containing a0, a1 and b1."""
    for control, target in NETWORK_ORDER:
        state = apply_cnot(state, control, target)
    return state


def run_cloner(input_state: StateVector, prep: PrepState | StateVector) -> CloneOutput:
    """Clone a single-qubit input through the network with the given preparation.

    A raw two-qubit StateVector is accepted in place of a PrepState so that
    preparations violating the solved form can be fed through for comparison.
    """
    if input_state.n_qubits != 1:
        raise ValueError(f"input must be a single qubit, got {input_state.n_qubits}")
    if isinstance(prep, PrepState):
        prep_state = prep.as_state()
    else:
        if prep.n_qubits != 2:
            raise ValueError(f"preparation must be two qubits, got {prep.n_qubits}")
        prep_state = StateVector(prep.amplitudes, ("a1", "b1"))

    original = StateVector(input_state.amplitudes, ("a0",))
    joint = cloning_network(tensor(original, prep_state))

    rho_joint = to_density(joint)
    rho_a0 = partial_trace(rho_joint, ["a0"])
    rho_a1 = partial_trace(rho_joint, ["a1"])

    rho_in = to_density(original)
    m_in = bloch_vector(rho_in).as_array()
    m_in_sq = float(m_in @ m_in)
    if np.sqrt(m_in_sq) <= BLOCH_INPUT_FLOOR:
        raise ValueError("input Bloch vector is too short to define scaling estimates")

    estimates = []
    residuals = []
    identity = np.eye(2)
    for rho in (rho_a0, rho_a1):
        m_out = bloch_vector(rho).as_array()
        s_est = float(m_out @ m_in) / m_in_sq
        expected = s_est * rho_in.entries + 0.5 * (1.0 - s_est) * identity
        estimates.append(s_est)
        residuals.append(float(np.max(np.abs(rho.entries - expected))))

    return CloneOutput(
        joint=joint,
        rho_a0=rho_a0,
        rho_a1=rho_a1,
        s0_est=estimates[0],
        s1_est=estimates[1],
        residual0=residuals[0],
        residual1=residuals[1],
        input_state=original,
    )


def verify_scaling(out: CloneOutput, tol: float) -> ScalingReport:
    """Check the scaled-output form: small residuals and isotropic shrink."""
    m_in = bloch_vector(to_density(out.input_state)).as_array()
    deviations = []
    for rho, s_est in ((out.rho_a0, out.s0_est), (out.rho_a1, out.s1_est)):
        m_out = bloch_vector(rho).as_array()
        deviations.append(float(np.max(np.abs(m_out - s_est * m_in))))
    ok = (
        out.residual0 <= tol
        and out.residual1 <= tol
        and deviations[0] <= tol
        and deviations[1] <= tol
    )
    return ScalingReport(
        ok=ok,
        residual0=out.residual0,
        residual1=out.residual1,
        isotropy0=deviations[0],
        isotropy1=deviations[1],
    )


def probe_states(label: str = "a0") -> list[StateVector]:
    """The six axis states used by the branch oracle, on the given label."""
    return [named_state(name, label) for name in PROBE_NAMES]
