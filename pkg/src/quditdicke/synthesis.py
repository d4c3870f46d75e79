"""Construction of the Dicke operator ``U_n`` from staged V operators.

Execution order is first-gate-first throughout. Operator products written
right-to-left therefore appear here reversed: ``U_n`` runs ``W_n`` first and
``W_2`` last, and each ``W_m`` runs its two-level family before its
three-level family, and so on.

A V operator acts on wires ``0 .. m-1`` and is specified by ascending levels
``i_0 < ... < i_{j-1}`` and descending wire boundaries ``l_1 > ... > l_{j-1}``.
On its trigger input, wires ``l_{r+1} .. l_r - 1`` hold level ``i_r`` (with
``l_0 = m`` and ``l_j = 0``). It runs one stage per boundary, from
``k = j-1`` down to ``k = 1``:

    X(i_{k-1}, i_k) on wire l_k, controlled by wire 0 == i_k
    R(i_{k-1}, i_k)(theta_{j-k}) on wire 0, multi-controlled
    X(i_{k-1}, i_k) on wire l_k, controlled by wire 0 == i_k

The rotation controls are taken from the wires next to each boundary (plus
wire ``m-1`` when ``i_0 > 0``), each pinned to the digit that wire holds at that
moment on the branch still waiting to be rotated. Tracking those digits
through the stages yields the narrow-register and adjacent-boundary variants
of the circuit without special-casing them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .circuit import Circuit, concat
from .core import InvalidCompositionError, SizeLimitError
from .gates import ControlledGate, SubspaceNot, SubspaceRotation

MAX_COUNT_ARG = 30


@dataclass(frozen=True)
class VOperatorSpec:
    m: int
    levels: tuple[int, ...]
    ls: tuple[int, ...]

    def __post_init__(self):
        levels = tuple(int(x) for x in self.levels)
        ls = tuple(int(x) for x in self.ls)
        object.__setattr__(self, "levels", levels)
        object.__setattr__(self, "ls", ls)
        j = len(levels)
        if j < 2:
            raise InvalidCompositionError("a V operator needs at least two levels")
        if len(ls) != j - 1:
            raise InvalidCompositionError(f"{j} levels need {j - 1} boundaries, got {ls}")
        if levels[0] < 0 or any(a >= b for a, b in zip(levels, levels[1:])):
            raise InvalidCompositionError(f"levels must be strictly increasing: {levels}")
        if any(a <= b for a, b in zip(ls, ls[1:])):
            raise InvalidCompositionError(f"boundaries must be strictly decreasing: {ls}")
        if ls[-1] < 1 or ls[0] > self.m - 1:
            raise InvalidCompositionError(f"boundaries {ls} must lie in [1, {self.m - 1}]")

    @property
    def j(self) -> int:
        return len(self.levels)

    def initial_digit(self, wire: int) -> int:
        """Level held by ``wire`` in the operator's trigger input."""
        for r, boundary in enumerate(self.ls):
            if wire >= boundary:
                return self.levels[r]
        return self.levels[-1]

    def relevant_wires(self) -> list[int]:
        wires = set()
        for boundary in self.ls:
            wires.update((boundary, boundary - 1))
        if self.levels[0] > 0:
            wires.add(self.m - 1)
        wires.discard(0)
        return sorted(wires)


def clamp_unit(x: float) -> float:
    return min(1.0, max(0.0, x))


def solve_angles(m: int, ls: Sequence[int]) -> tuple[float, ...]:
    """Rotation angles ``theta_1 .. theta_{j-1}`` of a V operator.

    With boundaries ``l_1 > ... > l_{j-1}`` the branch amplitudes must be
    ``sqrt(l_{j-1}/m)``, ``sqrt((l_{j-2}-l_{j-1})/m)``, ..., ``sqrt((m-l_1)/m)``.
    Each angle is solved in turn, dividing out the running product of
    ``-sin(theta/2)`` factors; every angle lies in ``[-2 pi, 0]`` so those
    factors are non-negative.
    """
    ls = tuple(ls)
    j = len(ls) + 1
    if not ls or ls[-1] < 1 or ls[0] > m - 1 or any(a <= b for a, b in zip(ls, ls[1:])):
        raise InvalidCompositionError(f"need 1 <= l_{{j-1}} < ... < l_1 <= m-1, got {ls} for m={m}")
    thetas = [-2.0 * math.acos(math.sqrt(clamp_unit(ls[-1] / m)))]
    running = -math.sin(thetas[0] / 2)
    for s in range(2, j):
        gap = ls[j - s - 1] - ls[j - s]
        assert running > 0.0, "sine product vanished; boundaries violate l_1 < m"
        ratio = math.sqrt(gap / m) / running
        theta = -2.0 * math.acos(clamp_unit(ratio))
        thetas.append(theta)
        running *= -math.sin(theta / 2)
    return tuple(thetas)


def v_tag(spec: VOperatorSpec, d: int) -> str:
    m, ls, levels = spec.m, spec.ls, spec.levels
    ls_txt = ",".join(map(str, ls))
    if d == 2:
        return f"I[{m};{ls_txt}]"
    if d == 3 and spec.j == 2:
        return f"I[{m};{ls_txt}]/({levels[0]},{levels[1]})"
    if d == 3:
        return f"II[{m};{ls_txt}]"
    return f"V({spec.j})[{m};{ls_txt};{','.join(map(str, levels))}]"


def build_v_operator(
    spec: VOperatorSpec,
    n: int,
    d: int | None = None,
    tag: str | None = None,
    offset: int = 0,
) -> Circuit:
    """Gate sequence of one V operator on an ``n``-wire register.

    The operator's local wire ``w`` is placed on register wire ``w + offset``.
    """
    if d is None:
        d = max(spec.levels) + 1
    if spec.levels[-1] > d - 1:
        raise InvalidCompositionError(f"levels {spec.levels} exceed d={d}")
    if offset < 0 or spec.m + offset > n:
        raise InvalidCompositionError(
            f"m={spec.m} at offset {offset} does not fit the register width n={n}"
        )
    if tag is None:
        tag = v_tag(spec, d)
    j, levels = spec.j, spec.levels
    thetas = solve_angles(spec.m, spec.ls)
    digit = {w: spec.initial_digit(w) for w in spec.relevant_wires()}
    gates: list[ControlledGate] = []
    for k in range(j - 1, 0, -1):
        boundary = spec.ls[k - 1]
        lo, hi = levels[k - 1], levels[k]
        flip = ControlledGate(boundary + offset, SubspaceNot(lo, hi), ((offset, hi),))
        digit[boundary] = hi
        rotate = ControlledGate(
            offset,
            SubspaceRotation(lo, hi, thetas[j - k - 1]),
            tuple((w + offset, v) for w, v in digit.items()),
        )
        gates += [flip, rotate, flip]
    return Circuit(d, n, tuple(gates), tuple(tag for _ in gates))


def boundary_tuples(m: int, j: int):
    """Descending boundary tuples ``(l_1, ..., l_{j-1})`` in execution order.

    Lexicographic in ``(l_{j-1}, ..., l_1)``, so the smallest boundaries run first.
    """
    for asc in combinations(range(1, m), j - 1):
        yield tuple(reversed(asc))


def build_w_dj(m: int, d: int, j: int, n: int | None = None, offset: int = 0) -> Circuit:
    """Every V operator on exactly ``j`` levels for an ``m``-wire block."""
    n = m + offset if n is None else n
    if not 2 <= j <= min(d, m):
        raise InvalidCompositionError(f"need 2 <= j <= min(d, m), got j={j}, d={d}, m={m}")
    parts = []
    for ls in boundary_tuples(m, j):
        for levels in combinations(range(d), j):
            parts.append(build_v_operator(VOperatorSpec(m, levels, ls), n, d, offset=offset))
    return concat(d, n, parts)


def build_w(m: int, d: int, n: int | None = None, offset: int = 0) -> Circuit:
    """``W_m``: maps ``|e(k)>`` to ``sum_s sqrt(k_s/m) |e(k - s_hat)> ⊗ |s>``.

    Acts on wires ``offset .. offset+m-1``; local wire 0 is the one that ends
    up holding ``|s>``.
    """
    n = m + offset if n is None else n
    if m < 2:
        raise InvalidCompositionError(f"W_m needs m >= 2, got {m}")
    return concat(d, n, [build_w_dj(m, d, j, n, offset) for j in range(2, min(d, m) + 1)])


def build_u(n: int, d: int) -> Circuit:
    """The Dicke operator: ``U_n |e(k)> = |D^n(k)>`` for every composition ``k`` of ``n``.

    Runs ``W_n, W_{n-1}, ..., W_2``. Each ``W_m`` peels one qudit off the
    bottom of the block it acts on, so ``W_m`` occupies the top ``m`` wires,
    ``n-m .. n-1``.
    """
    if n < 1:
        raise InvalidCompositionError(f"need n >= 1, got {n}")
    return concat(d, n, [build_w(m, d, n, offset=n - m) for m in range(n, 1, -1)])


def build_i_operator(m: int, l: int, d: int, n: int | None = None, offset: int = 0) -> Circuit:
    """``I_{m,l}``: the two-level V operators for every level pair, in lexicographic order."""
    n = m + offset if n is None else n
    if d not in (2, 3):
        raise InvalidCompositionError("I operators are defined for d = 2 and d = 3 only")
    parts = [
        build_v_operator(VOperatorSpec(m, pair, (l,)), n, d, offset=offset)
        for pair in combinations(range(d), 2)
    ]
    return concat(d, n, parts)


def build_ii_operator(m: int, l1: int, l2: int, n: int | None = None, offset: int = 0) -> Circuit:
    """``II_{m,l1,l2}``: the qutrit V operator on levels (0, 1, 2)."""
    n = m + offset if n is None else n
    return build_v_operator(VOperatorSpec(m, (0, 1, 2), (l1, l2)), n, 3, offset=offset)


def _guard(*args: int) -> None:
    if sum(args) > MAX_COUNT_ARG:
        raise SizeLimitError(f"arguments {args} exceed the count guard of {MAX_COUNT_ARG}")


def predicted_w_dj_count(m: int, d: int, j: int) -> int:
    return math.comb(d, j) * math.comb(m - 1, j - 1)


def predicted_w_count(m: int, d: int) -> int:
    """Weak ``d``-compositions of ``m``; includes the identity ``j = 1`` term."""
    _guard(m, d)
    return math.comb(m + d - 1, d - 1)


def predicted_v_count(n: int, d: int) -> int:
    """Closed form of ``sum_{m=2}^{n} C(m+d-1, d-1)``."""
    _guard(n, d)
    total = (n + 1) * math.comb(n + d, d - 1)
    assert total % d == 0
    return total // d - d - 1


def identity_v_terms(d: int) -> int:
    """Trivial single-level V operators per ``W_m`` that the closed forms include (one per level)."""
    return math.comb(d, 1)


def predicted_built_v_count(n: int, d: int) -> int:
    """V operators actually emitted by :func:`build_u`, without the trivial single-level terms."""
    return predicted_v_count(n, d) - identity_v_terms(d) * max(n - 1, 0)
