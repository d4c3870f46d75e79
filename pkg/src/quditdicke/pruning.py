"""Circuits specialized to one composition, with redundant macro operators removed.

For qubits the pruning is exact. For qutrits the bounds below are the
conjectured ones; they are checked by exhaustive simulation at small ``n``,
which is evidence, not proof.
"""

from __future__ import annotations

from dataclasses import dataclass

from .circuit import Circuit, concat
from .core import CompositionVector, InvalidCompositionError
from .synthesis import build_i_operator, build_ii_operator


@dataclass(frozen=True)
class PrunedSpec:
    k: CompositionVector

    def __post_init__(self):
        if not isinstance(self.k, CompositionVector):
            object.__setattr__(self, "k", CompositionVector(self.k))
        if self.k.d not in (2, 3):
            raise InvalidCompositionError(f"pruned circuits exist for d = 2, 3 only, got d={self.k.d}")
        if self.k.n() < 1:
            raise InvalidCompositionError("composition must have n >= 1")

    @property
    def d(self) -> int:
        return self.k.d

    @property
    def n(self) -> int:
        return self.k.n()

    @property
    def l(self) -> int:
        """Qubit case: number of ones."""
        return self.k[1]

    @property
    def l1(self) -> int:
        return self.k[1] + self.k[2]

    @property
    def l2(self) -> int:
        return self.k[2]

    @property
    def k_tilde(self) -> int:
        k0, k1, k2 = self.k.parts
        return k2 if k0 == 0 else max(k1, k2)


def _span(lo: int, hi: int) -> range:
    # empty when lo > hi
    return range(lo, hi + 1)


def qubit_l_range(n: int, l: int, m: int) -> range:
    return _span(max(l + m - n, 1), min(l, m - 1))


def qutrit_ii_pairs(n: int, l1: int, l2: int, m: int):
    """``(l1', l2')`` pairs kept in the three-level family of block ``m``, in execution order."""
    for l2p in _span(max(l2 + m - n, 1), min(l2, m - 2)):
        for l1p in _span(max(l1 + m - n, l2p + 1), min(l1, m - 1)):
            yield l1p, l2p


def build_pruned_u_qubit(spec: PrunedSpec) -> Circuit:
    if spec.d != 2:
        raise InvalidCompositionError("qubit pruning needs d = 2")
    n, l = spec.n, spec.l
    parts = []
    for m in range(n, 1, -1):
        for lp in qubit_l_range(n, l, m):
            parts.append(build_i_operator(m, lp, 2, n, offset=n - m))
    return concat(2, n, parts)


def build_pruned_u_qutrit(spec: PrunedSpec) -> Circuit:
    if spec.d != 3:
        raise InvalidCompositionError("qutrit pruning needs d = 3")
    n, kt = spec.n, spec.k_tilde
    parts = []
    for m in range(n, 1, -1):
        for lp in qubit_l_range(n, kt, m):
            parts.append(build_i_operator(m, lp, 3, n, offset=n - m))
        for l1p, l2p in qutrit_ii_pairs(n, spec.l1, spec.l2, m):
            parts.append(build_ii_operator(m, l1p, l2p, n, offset=n - m))
    return concat(3, n, parts)


def build_pruned_u(k: CompositionVector) -> Circuit:
    spec = PrunedSpec(k)
    if spec.d == 2:
        return build_pruned_u_qubit(spec)
    return build_pruned_u_qutrit(spec)


def predicted_pruned_counts(k: CompositionVector) -> dict[str, int]:
    """Closed-form numbers of I and II operators in the pruned circuit."""
    spec = PrunedSpec(k)
    n = spec.n
    if spec.d == 2:
        l = spec.l
        n_i = sum(1 + min(l, m - 1) - max(l + m - n, 1) for m in range(2, n + 1))
        return {"I": n_i, "II": 0}
    kt, l1, l2 = spec.k_tilde, spec.l1, spec.l2
    n_i = sum(1 + min(kt, m - 1) - max(kt + m - n, 1) for m in range(2, n + 1))
    n_ii = sum(
        1 + min(l1, m - 1) - max(l1 + m - n, l2p + 1)
        for m in range(2, n + 1)
        for l2p in range(max(l2 + m - n, 1), min(l2, m - 2) + 1)
    )
    return {"I": n_i, "II": n_ii}
