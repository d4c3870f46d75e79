"""Deterministic preparation circuits for qudit Dicke states."""

from .circuit import Circuit, compose, count_by_tag, count_v_operators
from .core import (
    CompositionVector,
    DickeError,
    InvalidCompositionError,
    InvalidGateError,
    InvalidStateError,
    QuditState,
    SizeLimitError,
    compositions,
    fidelity,
    identity_permutation_state,
)
from .gates import (
    ControlledGate,
    SubspaceNot,
    SubspaceRotation,
    apply_controlled_gate,
    controlled_gate_matrix,
    primitive_matrix,
)
from .pruning import PrunedSpec, build_pruned_u, predicted_pruned_counts
from .reference import multinomial, recursion_check, reference_dicke_state
from .simulator import run, verify
from .synthesis import (
    VOperatorSpec,
    build_u,
    build_v_operator,
    build_w,
    build_w_dj,
    predicted_v_count,
    predicted_w_count,
    solve_angles,
)

__all__ = [
    "Circuit",
    "CompositionVector",
    "ControlledGate",
    "DickeError",
    "InvalidCompositionError",
    "InvalidGateError",
    "InvalidStateError",
    "PrunedSpec",
    "QuditState",
    "SizeLimitError",
    "SubspaceNot",
    "SubspaceRotation",
    "VOperatorSpec",
    "apply_controlled_gate",
    "build_pruned_u",
    "build_u",
    "build_v_operator",
    "build_w",
    "build_w_dj",
    "compose",
    "compositions",
    "controlled_gate_matrix",
    "count_by_tag",
    "count_v_operators",
    "fidelity",
    "identity_permutation_state",
    "multinomial",
    "predicted_pruned_counts",
    "predicted_v_count",
    "predicted_w_count",
    "primitive_matrix",
    "recursion_check",
    "reference_dicke_state",
    "run",
    "solve_angles",
    "verify",
]
