"""Brute-force Dicke states, built by scanning every basis index.

Nothing here depends on circuit synthesis, so these functions serve as the
ground truth the synthesized circuits are checked against.
"""

from __future__ import annotations

import math
import numpy as np

from .core import (
    ZERO_TOL,
    CompositionVector,
    InvalidCompositionError,
    QuditState,
    SizeLimitError,
    check_size,
)

MAX_MULTINOMIAL_N = 20


def multinomial(k: CompositionVector) -> int:
    """``n! / prod(k_j!)`` in exact integer arithmetic."""
    n = k.n()
    if n > MAX_MULTINOMIAL_N:
        raise SizeLimitError(f"n={n} exceeds the multinomial guard of {MAX_MULTINOMIAL_N}")
    out = math.factorial(n)
    for part in k:
        out //= math.factorial(part)
    return out


def reference_dicke_state(k: CompositionVector) -> QuditState:
    """Equal superposition of every basis string whose digits have multiplicities ``k``."""
    d, n = k.d, k.n()
    if n < 1:
        raise InvalidCompositionError("Dicke state needs n >= 1")
    if d < 2:
        raise InvalidCompositionError("Dicke state needs d >= 2")
    check_size(d, n)
    amp = 1.0 / math.sqrt(multinomial(k))
    mask = level_counts(d, n) == np.array(k.parts)
    amps = np.where(mask.all(axis=1), amp, 0.0).astype(np.complex128)
    return QuditState(d, n, amps)


def level_counts(d: int, n: int) -> np.ndarray:
    """``counts[x, s]`` is how many wires of basis index ``x`` hold level ``s``."""
    linear = np.arange(d**n)
    counts = np.zeros((d**n, d), dtype=np.int64)
    for q in range(n):
        np.add.at(counts, (linear, (linear // d**q) % d), 1)
    return counts


def append_wire0(state: QuditState, level: int) -> QuditState:
    """``state ⊗ |level>``: the new qudit becomes wire 0, old wires shift up by one."""
    tail = np.zeros(state.d, dtype=np.complex128)
    tail[level] = 1.0
    return QuditState(state.d, state.n + 1, np.kron(state.amps, tail))


def recursion_rhs(k: CompositionVector) -> QuditState:
    """``sum_s sqrt(k_s/n) |D^{n-1}(k - s_hat)> ⊗ |s>``, skipping levels with ``k_s = 0``."""
    n = k.n()
    if n < 2:
        raise InvalidCompositionError("the recursion needs n >= 2")
    out = np.zeros(k.d**n, dtype=np.complex128)
    for s in range(k.d):
        if k[s] == 0:
            continue
        out += math.sqrt(k[s] / n) * append_wire0(reference_dicke_state(k.without(s)), s).amps
    return QuditState(k.d, n, out)


def recursion_check(k: CompositionVector, tol: float = ZERO_TOL) -> bool:
    lhs = reference_dicke_state(k).amps
    rhs = recursion_rhs(k).amps
    return bool(np.max(np.abs(lhs - rhs)) <= tol)
