"""Subspace NOT / subspace R^y gates and their multi-controlled versions."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable

import numpy as np

from .core import InvalidGateError, QuditState, SizeLimitError

MATRIX_QUBIT_BUDGET = 14


@dataclass(frozen=True)
class SubspaceNot:
    """Swap levels ``i`` and ``j``, fix all others."""

    i: int
    j: int

    def __post_init__(self):
        _check_levels(self.i, self.j)

    kind = "X"

    def block(self) -> np.ndarray:
        return np.array([[0.0, 1.0], [1.0, 0.0]], dtype=np.complex128)

    def inverse(self) -> SubspaceNot:
        return self


@dataclass(frozen=True)
class SubspaceRotation:
    """R^y(theta) rotation in the span of levels ``i`` and ``j``.

    ``|i> -> cos(theta/2)|i> + sin(theta/2)|j>`` and
    ``|j> -> -sin(theta/2)|i> + cos(theta/2)|j>``.
    """

    i: int
    j: int
    theta: float

    def __post_init__(self):
        _check_levels(self.i, self.j)
        object.__setattr__(self, "theta", float(self.theta))

    kind = "R"

    def block(self) -> np.ndarray:
        c, s = math.cos(self.theta / 2), math.sin(self.theta / 2)
        return np.array([[c, -s], [s, c]], dtype=np.complex128)

    def inverse(self) -> SubspaceRotation:
        return SubspaceRotation(self.i, self.j, -self.theta)


GatePrimitive = SubspaceNot | SubspaceRotation


def _check_levels(i: int, j: int) -> None:
    if not (0 <= i < j):
        raise InvalidGateError(f"need 0 <= i < j, got i={i}, j={j}")


def primitive_matrix(g: GatePrimitive, d: int) -> np.ndarray:
    """The ``d x d`` matrix: the 2x2 block on rows/cols ``i, j``, identity elsewhere."""
    if g.j > d - 1:
        raise InvalidGateError(f"level {g.j} out of range for d={d}")
    mat = np.eye(d, dtype=np.complex128)
    ix = [g.i, g.j]
    mat[np.ix_(ix, ix)] = g.block()
    return mat


@dataclass(frozen=True)
class ControlledGate:
    """A primitive on ``target`` that fires only when every ``(wire, value)`` control matches.

    Controls are stored sorted by wire.
    """

    target: int
    primitive: GatePrimitive
    controls: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self):
        controls = tuple(sorted((int(w), int(v)) for w, v in self.controls))
        wires = [w for w, _ in controls]
        if len(set(wires)) != len(wires):
            raise InvalidGateError(f"wire controlled twice in {controls}")
        if self.target in wires:
            raise InvalidGateError(f"target wire {self.target} is also a control")
        if self.target < 0 or any(w < 0 or v < 0 for w, v in controls):
            raise InvalidGateError("wires and control values must be non-negative")
        object.__setattr__(self, "controls", controls)

    @property
    def wires(self) -> tuple[int, ...]:
        return (self.target, *(w for w, _ in self.controls))

    def validate(self, d: int, n: int) -> None:
        if self.primitive.j > d - 1:
            raise InvalidGateError(f"level {self.primitive.j} out of range for d={d}")
        for w in self.wires:
            if w >= n:
                raise InvalidGateError(f"wire {w} out of range for n={n}")
        for w, v in self.controls:
            if v >= d:
                raise InvalidGateError(f"control value {v} on wire {w} out of range for d={d}")

    def inverse(self) -> ControlledGate:
        return ControlledGate(self.target, self.primitive.inverse(), self.controls)

    def to_dict(self) -> dict:
        out = {
            "target": self.target,
            "kind": self.primitive.kind,
            "i": self.primitive.i,
            "j": self.primitive.j,
        }
        if isinstance(self.primitive, SubspaceRotation):
            out["theta"] = self.primitive.theta
        out["controls"] = [{"wire": w, "value": v} for w, v in self.controls]
        return out

    @classmethod
    def from_dict(cls, data: dict) -> ControlledGate:
        try:
            kind = data["kind"]
            if kind == "X":
                prim = SubspaceNot(int(data["i"]), int(data["j"]))
            elif kind == "R":
                prim = SubspaceRotation(int(data["i"]), int(data["j"]), float(data["theta"]))
            else:
                raise InvalidGateError(f"unknown gate kind {kind!r}")
            controls = [(c["wire"], c["value"]) for c in data.get("controls", [])]
            return cls(int(data["target"]), prim, tuple(controls))
        except (KeyError, TypeError) as exc:
            raise InvalidGateError(f"malformed gate record: {exc}") from exc


def _fiber_index(n: int, assignments: dict[int, int]) -> tuple:
    # C-order reshape puts wire n-1 on axis 0
    idx: list[object] = [slice(None)] * n
    for wire, value in assignments.items():
        idx[n - 1 - wire] = value
    return tuple(idx)


def apply_inplace(amps: np.ndarray, g: ControlledGate, d: int, n: int) -> None:
    """Apply ``g`` to a flat amplitude buffer in place.

    The buffer is viewed as an ``n``-axis tensor; fixing the control digits and
    the target digit to ``i`` or ``j`` selects two strided views whose pairs of
    entries are rotated (or swapped) together. Entries outside the selected
    fibers are never touched.
    """
    tensor = amps.reshape((d,) * n)
    fixed = dict(g.controls)
    fixed[g.target] = g.primitive.i
    lo = _fiber_index(n, fixed)
    fixed[g.target] = g.primitive.j
    hi = _fiber_index(n, fixed)
    a = tensor[lo].copy()
    b = tensor[hi]
    if isinstance(g.primitive, SubspaceNot):
        tensor[lo] = b
        tensor[hi] = a
    else:
        c = math.cos(g.primitive.theta / 2)
        s = math.sin(g.primitive.theta / 2)
        tensor[lo] = c * a - s * b
        tensor[hi] = s * a + c * tensor[hi]


def apply_controlled_gate(state: QuditState, g: ControlledGate) -> QuditState:
    g.validate(state.d, state.n)
    amps = state.amps.copy()
    apply_inplace(amps, g, state.d, state.n)
    return QuditState(state.d, state.n, amps)


def controlled_gate_matrix(g: ControlledGate, d: int, n: int) -> np.ndarray:
    """Dense ``d**n x d**n`` unitary of ``g``.

    Built as ``I - P + A`` from Kronecker products, where ``P`` projects onto the
    control pattern and ``A`` is ``P`` with the primitive placed on the target.
    """
    g.validate(d, n)
    if n * math.log2(d) > MATRIX_QUBIT_BUDGET:
        raise SizeLimitError(f"{d}**{n} matrix is too large to materialize")
    controls = dict(g.controls)
    eye = np.eye(d, dtype=np.complex128)
    proj_factors = []
    act_factors = []
    for wire in reversed(range(n)):
        if wire in controls:
            p = np.zeros((d, d), dtype=np.complex128)
            p[controls[wire], controls[wire]] = 1.0
            proj_factors.append(p)
            act_factors.append(p)
        elif wire == g.target:
            proj_factors.append(eye)
            act_factors.append(primitive_matrix(g.primitive, d))
        else:
            proj_factors.append(eye)
            act_factors.append(eye)
    proj = reduce(np.kron, proj_factors)
    act = reduce(np.kron, act_factors)
    return np.eye(d**n, dtype=np.complex128) - proj + act


def circuit_matrix(gates: Iterable[ControlledGate], d: int, n: int) -> np.ndarray:
    """Product of gate matrices, first gate applied first."""
    out = np.eye(d**n, dtype=np.complex128)
    for g in gates:
        out = controlled_gate_matrix(g, d, n) @ out
    return out
