"""Qudit state vectors, basis indexing and composition vectors.

Wire ``q`` of an ``n``-qudit register is the base-``d`` digit of weight
``d**q``: wire 0 is the least-significant digit and is written rightmost in
ket notation, so ``|0012>`` has wire 3 = 0, wire 2 = 0, wire 1 = 1, wire 0 = 2.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

ZERO_TOL = 1e-12
FIDELITY_TOL = 1e-10
MAX_AMPLITUDES = 2**20


class DickeError(ValueError):
    """Base class for all errors raised by this package."""


class InvalidCompositionError(DickeError):
    pass


class InvalidStateError(DickeError):
    pass


class InvalidGateError(DickeError):
    pass


class SizeLimitError(DickeError):
    """Raised when a requested object exceeds the configured size guard."""


@dataclass(frozen=True)
class CompositionVector:
    """Multiplicities ``(k_0, ..., k_{d-1})`` of the levels in a Dicke state."""

    parts: tuple[int, ...]

    def __init__(self, parts: Sequence[int], d: int | None = None):
        parts = tuple(int(p) for p in parts)
        if d is not None and len(parts) != d:
            raise InvalidCompositionError(
                f"composition has {len(parts)} parts but d={d}"
            )
        if len(parts) < 1:
            raise InvalidCompositionError("composition needs at least one part")
        if any(p < 0 for p in parts):
            raise InvalidCompositionError(f"negative part in {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def d(self) -> int:
        return len(self.parts)

    def n(self) -> int:
        return sum(self.parts)

    def __getitem__(self, s: int) -> int:
        return self.parts[s]

    def __iter__(self):
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def without(self, s: int) -> CompositionVector:
        """Return ``k - s_hat``; level ``s`` must have a positive count."""
        if self.parts[s] == 0:
            raise InvalidCompositionError(f"level {s} has zero multiplicity")
        parts = list(self.parts)
        parts[s] -= 1
        return CompositionVector(parts)

    def num_nonzero(self) -> int:
        return sum(1 for p in self.parts if p)

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.parts)

    @classmethod
    def parse(cls, text: str, d: int | None = None) -> CompositionVector:
        try:
            parts = [int(tok) for tok in text.split(",") if tok.strip()]
        except ValueError as exc:
            raise InvalidCompositionError(f"cannot parse composition {text!r}") from exc
        return cls(parts, d)


def compositions(n: int, d: int):
    """Yield every weak ``d``-composition of ``n`` in lexicographic order."""
    if d == 1:
        yield CompositionVector((n,))
        return
    for first in range(n + 1):
        for rest in compositions(n - first, d - 1):
            yield CompositionVector((first, *rest.parts))


def digits_of(linear: int, d: int, n: int) -> tuple[int, ...]:
    """Digits indexed by wire: ``digits[q]`` is the level of wire ``q``."""
    if not 0 <= linear < d**n:
        raise InvalidStateError(f"index {linear} outside [0, {d}**{n})")
    out = []
    for _ in range(n):
        linear, r = divmod(linear, d)
        out.append(r)
    return tuple(out)


def linear_of(digits: Sequence[int], d: int) -> int:
    """Inverse of :func:`digits_of`."""
    linear = 0
    for q, x in enumerate(digits):
        if not 0 <= x < d:
            raise InvalidStateError(f"digit {x} on wire {q} outside [0, {d})")
        linear += x * d**q
    return linear


def ket_label(digits: Sequence[int]) -> str:
    """Ket string with wire ``n-1`` leftmost, e.g. ``(2, 1, 0, 0) -> '0012'``."""
    return "".join(str(x) for x in reversed(digits))


def digits_from_label(label: str) -> tuple[int, ...]:
    return tuple(int(ch) for ch in reversed(label))


def check_size(d: int, n: int, limit: int = MAX_AMPLITUDES) -> None:
    if d**n > limit:
        raise SizeLimitError(f"{d}**{n} amplitudes exceed the limit of {limit}")


@dataclass(frozen=True, eq=False)
class QuditState:
    """Dense amplitude vector over the ``d**n`` computational basis states."""

    d: int
    n: int
    amps: np.ndarray

    def __post_init__(self):
        if self.d < 2:
            raise InvalidStateError(f"qudit dimension must be at least 2, got {self.d}")
        if self.n < 1:
            raise InvalidStateError(f"need at least one wire, got {self.n}")
        amps = np.array(self.amps, dtype=np.complex128).reshape(-1)
        if amps.size != self.d**self.n:
            raise InvalidStateError(
                f"expected {self.d**self.n} amplitudes for d={self.d}, n={self.n}, "
                f"got {amps.size}"
            )
        amps.flags.writeable = False
        object.__setattr__(self, "amps", amps)

    @classmethod
    def basis(cls, d: int, digits: Sequence[int]) -> QuditState:
        n = len(digits)
        check_size(d, n)
        amps = np.zeros(d**n, dtype=np.complex128)
        amps[linear_of(digits, d)] = 1.0
        return cls(d, n, amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def amplitude(self, label: str) -> complex:
        """Amplitude of the basis ket written as a string, wire ``n-1`` first."""
        return complex(self.amps[linear_of(digits_from_label(label), self.d)])

    def support(self, tol: float = ZERO_TOL) -> dict[str, complex]:
        """Nonzero amplitudes keyed by ket label."""
        out = {}
        for idx in np.flatnonzero(np.abs(self.amps) > tol):
            out[ket_label(digits_of(int(idx), self.d, self.n))] = complex(self.amps[idx])
        return out

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "n": self.n,
            "amps": [[float(a.real), float(a.imag)] for a in self.amps],
        }

    @classmethod
    def from_dict(cls, data: dict) -> QuditState:
        try:
            amps = [complex(re, im) for re, im in data["amps"]]
            return cls(int(data["d"]), int(data["n"]), np.array(amps))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, DickeError):
                raise
            raise InvalidStateError(f"malformed state dump: {exc}") from exc

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> QuditState:
        return cls.from_dict(json.loads(text))


def identity_permutation_state(k: CompositionVector, d: int | None = None) -> QuditState:
    """The sorted product state ``|0...0 1...1 ... (d-1)...(d-1)>``.

    The ``k_{d-1}`` copies of the top level sit on the lowest wires and the
    ``k_0`` zeros on the highest ones.
    """
    if not isinstance(k, CompositionVector):
        k = CompositionVector(k, d)
    elif d is not None and k.d != d:
        raise InvalidCompositionError(f"composition has {k.d} parts but d={d}")
    if k.d < 2:
        raise InvalidCompositionError("a composition needs at least two levels")
    if k.n() < 1:
        raise InvalidCompositionError("composition must have n >= 1")
    return QuditState.basis(k.d, sorted_digits(k))


def sorted_digits(k: CompositionVector) -> tuple[int, ...]:
    """Wire digits of the identity-permutation state, indexed by wire."""
    digits: list[int] = []
    for level in reversed(range(k.d)):
        digits.extend([level] * k[level])
    return tuple(digits)


def fidelity(a: QuditState, b: QuditState) -> float:
    """Squared overlap ``|<a|b>|**2``."""
    if (a.d, a.n) != (b.d, b.n):
        raise InvalidStateError(
            f"state shapes differ: (d={a.d}, n={a.n}) vs (d={b.d}, n={b.n})"
        )
    return float(abs(np.vdot(a.amps, b.amps)) ** 2)
