"""Exact simulator and parameter solver for a four-CNOT asymmetric qubit cloner."""

from .cloner import (
    CloneOutput,
    InfeasibleScalingError,
    PrepState,
    ScalingPair,
    ScalingReport,
    cloning_network,
    feasibility,
    probe_states,
    run_cloner,
    solve_prep,
    verify_scaling,
)
from .gates import (
    GateApplication,
    apply_circuit,
    apply_cnot,
    apply_gate,
    apply_hadamard,
    apply_ry,
    apply_rz,
    prepare_two_qubit,
)
from .pauli import (
    BellCoefficients,
    bell_basis,
    bell_components,
    bell_decompose,
    bell_expand,
    run_pauli_cloner,
)
from .qstate import (
    BlochVector,
    DensityMatrix,
    StateVector,
    basis_state,
    bloch_vector,
    fidelity_pure,
    from_bloch,
    named_state,
    overlap,
    partial_trace,
    random_state,
    reorder,
    single_qubit,
    tensor,
    to_density,
)

__version__ = "0.1.0"

__all__ = [
    "BellCoefficients",
    "BlochVector",
    "CloneOutput",
    "DensityMatrix",
    "GateApplication",
    "InfeasibleScalingError",
    "PrepState",
    "ScalingPair",
    "ScalingReport",
    "StateVector",
    "apply_circuit",
    "apply_cnot",
    "apply_gate",
    "apply_hadamard",
    "apply_ry",
    "apply_rz",
    "basis_state",
    "bell_basis",
    "bell_components",
    "bell_decompose",
    "bell_expand",
    "bloch_vector",
    "cloning_network",
    "feasibility",
    "fidelity_pure",
    "from_bloch",
    "named_state",
    "overlap",
    "partial_trace",
    "prepare_two_qubit",
    "probe_states",
    "random_state",
    "reorder",
    "run_cloner",
    "run_pauli_cloner",
    "single_qubit",
    "solve_prep",
    "tensor",
    "to_density",
    "verify_scaling",
    "__version__",
]
