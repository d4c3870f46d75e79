"""Ordered gate sequences with macro-operator tags, metrics and JSON I/O.

Every synthesized gate carries a tag naming the macro operator it belongs to:

    I[m;l]               qubit block, or the qutrit two-level block
    I[m;l]/(0,2)         one of the three V operators inside a qutrit I block
    II[m;l1,l2]          qutrit three-level block
    V(3)[m;l1,l2;0,1,3]  general-d V operator acting on j = 3 levels

The macro label is the part before ``/``; its kind is the part before ``[``.
Gates whose tags share a full string belong to one V operator.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .core import InvalidStateError
from .gates import ControlledGate


def macro_label(tag: str) -> str:
    return tag.split("/", 1)[0]


def tag_kind(tag: str) -> str:
    return tag.split("[", 1)[0]


@dataclass(frozen=True)
class Circuit:
    d: int
    n: int
    gates: tuple[ControlledGate, ...] = ()
    tags: tuple[str, ...] = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        gates = tuple(self.gates)
        tags = tuple("" for _ in gates) if self.tags is None else tuple(self.tags)
        if len(tags) != len(gates):
            raise InvalidStateError(f"{len(gates)} gates but {len(tags)} tags")
        for g in gates:
            g.validate(self.d, self.n)
        object.__setattr__(self, "gates", gates)
        object.__setattr__(self, "tags", tags)

    def __len__(self) -> int:
        return len(self.gates)

    def size(self) -> int:
        return len(self.gates)

    def depth(self) -> int:
        """Layers of a greedy schedule in which gates sharing a wire never overlap."""
        frontier = [0] * self.n
        depth = 0
        for g in self.gates:
            layer = 1 + max(frontier[w] for w in g.wires)
            for w in g.wires:
                frontier[w] = layer
            depth = max(depth, layer)
        return depth

    def inverse(self) -> Circuit:
        return Circuit(
            self.d,
            self.n,
            tuple(g.inverse() for g in reversed(self.gates)),
            tuple(reversed(self.tags)),
        )

    def widen(self, n: int) -> Circuit:
        """The same gates on a register of ``n`` wires (extra wires are idle)."""
        return Circuit(self.d, n, self.gates, self.tags)

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "n": self.n,
            "gates": [g.to_dict() for g in self.gates],
            "tags": list(self.tags),
        }

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, data: dict) -> Circuit:
        try:
            gates = tuple(ControlledGate.from_dict(g) for g in data["gates"])
            tags = data.get("tags")
            return cls(int(data["d"]), int(data["n"]), gates, tags)
        except (KeyError, TypeError) as exc:
            raise InvalidStateError(f"malformed circuit record: {exc}") from exc

    @classmethod
    def from_json(cls, text: str) -> Circuit:
        return cls.from_dict(json.loads(text))


def empty(d: int, n: int) -> Circuit:
    return Circuit(d, n)


def compose(first: Circuit, then: Circuit) -> Circuit:
    """Run ``first`` and then ``then``."""
    if (first.d, first.n) != (then.d, then.n):
        raise InvalidStateError(
            f"cannot compose (d={first.d}, n={first.n}) with (d={then.d}, n={then.n})"
        )
    return Circuit(first.d, first.n, first.gates + then.gates, first.tags + then.tags)


def concat(d: int, n: int, parts: Sequence[Circuit]) -> Circuit:
    gates: list[ControlledGate] = []
    tags: list[str] = []
    for part in parts:
        if part.d != d or part.n > n:
            raise InvalidStateError(f"part (d={part.d}, n={part.n}) does not fit (d={d}, n={n})")
        gates.extend(part.gates)
        tags.extend(part.tags)
    return Circuit(d, n, tuple(gates), tuple(tags))


def macro_sequence(c: Circuit) -> list[str]:
    """Distinct macro labels in order of first appearance."""
    seen: dict[str, None] = {}
    for tag in c.tags:
        if tag:
            seen.setdefault(macro_label(tag), None)
    return list(seen)


def v_sequence(c: Circuit) -> list[str]:
    """Distinct V-operator tags in order of first appearance."""
    seen: dict[str, None] = {}
    for tag in c.tags:
        if tag:
            seen.setdefault(tag, None)
    return list(seen)


def count_by_tag(c: Circuit) -> dict[str, int]:
    """Number of macro operators of each kind (``"I"``, ``"II"``, ``"V(3)"``, ...)."""
    return dict(Counter(tag_kind(label) for label in macro_sequence(c)))


def count_v_operators(c: Circuit) -> int:
    return len(v_sequence(c))
