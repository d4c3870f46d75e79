"""Run circuits on dense states and check them against the reference Dicke state."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .circuit import Circuit, count_by_tag, count_v_operators
from .core import (
    FIDELITY_TOL,
    MAX_AMPLITUDES,
    CompositionVector,
    InvalidCompositionError,
    InvalidStateError,
    QuditState,
    check_size,
    fidelity,
    identity_permutation_state,
)
from .gates import apply_inplace
from .reference import reference_dicke_state

AMPLITUDE_TOL = 1e-8


def run(c: Circuit, state: QuditState, limit: int = MAX_AMPLITUDES) -> QuditState:
    """Apply the gates of ``c`` to ``state`` in order."""
    if (c.d, c.n) != (state.d, state.n):
        raise InvalidStateError(
            f"circuit is (d={c.d}, n={c.n}) but state is (d={state.d}, n={state.n})"
        )
    check_size(state.d, state.n, limit)
    amps = state.amps.copy()
    for g in c.gates:
        apply_inplace(amps, g, c.d, c.n)
    return QuditState(state.d, state.n, amps)


@dataclass
class VerifyReport:
    d: int
    n: int
    k: CompositionVector
    mode: str
    fidelity: float
    max_amp_error: float
    size: int
    depth: int
    counts: dict[str, int] = field(default_factory=dict)
    v_count: int = 0
    passed: bool = False

    def as_row(self) -> dict:
        return {
            "d": self.d,
            "n": self.n,
            "k": str(self.k),
            "mode": self.mode,
            "fidelity": f"{self.fidelity:.17g}",
            "max_amp_error": f"{self.max_amp_error:.17g}",
            "size": self.size,
            "depth": self.depth,
            "pass": self.passed,
        }


def build_circuit(d: int, n: int, k: CompositionVector | None, mode: str = "full") -> Circuit:
    """The full ``U_n`` circuit, or the circuit pruned for composition ``k``."""
    from .pruning import build_pruned_u
    from .synthesis import build_u

    if mode == "full":
        return build_u(n, d)
    if mode == "pruned":
        if k is None:
            raise InvalidCompositionError("pruned circuits need a composition")
        return build_pruned_u(k)
    raise InvalidCompositionError(f"unknown mode {mode!r}")


def verify(
    d: int,
    n: int,
    k: CompositionVector,
    mode: str = "full",
    tol: float = FIDELITY_TOL,
    circuit: Circuit | None = None,
) -> VerifyReport:
    """Run the circuit on ``|e(k)>`` and compare with the brute-force Dicke state."""
    if not isinstance(k, CompositionVector):
        k = CompositionVector(k, d)
    if k.d != d:
        raise InvalidCompositionError(f"composition has {k.d} parts but d={d}")
    if k.n() != n:
        raise InvalidCompositionError(f"composition sums to {k.n()} but n={n}")
    if circuit is None:
        circuit = build_circuit(d, n, k, mode)
    out = run(circuit, identity_permutation_state(k))
    ref = reference_dicke_state(k)
    fid = fidelity(out, ref)
    err = float(np.max(np.abs(out.amps - ref.amps)))
    return VerifyReport(
        d=d,
        n=n,
        k=k,
        mode=mode,
        fidelity=fid,
        max_amp_error=err,
        size=circuit.size(),
        depth=circuit.depth(),
        counts=count_by_tag(circuit),
        v_count=count_v_operators(circuit),
        passed=fid >= 1 - tol and err <= AMPLITUDE_TOL,
    )
