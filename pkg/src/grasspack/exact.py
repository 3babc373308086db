"""Exact matrices of the form 2^(-e/2) * E with E integer.

This representation closes under products and transposes and covers every
matrix the constructions need: signed permutation matrices (e = 0), the
scaled sign matrix (e = i), and all projections onto invariant planes
(e even).  Exactness turns idempotence, orthogonality, and trace checks
into integer identities.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import UsageError

# Guard for exact int64 matmul: |sum of products| must stay below 2^62.
_SAFE = 1 << 31


def _as_int64(entries) -> np.ndarray:
    arr = np.asarray(entries)
    if arr.ndim != 2:
        raise UsageError("entries must be a 2-D matrix")
    if arr.dtype != np.int64:
        arr64 = arr.astype(np.int64)
        if arr.dtype.kind == "f" and not np.array_equal(arr64, arr):
            raise UsageError("entries must be integers")
        arr = arr64
    return arr


class ExactMatrix:
    """Immutable integer matrix with a half-power-of-two scale."""

    __slots__ = ("entries", "half_scale", "_key")

    def __init__(self, entries, half_scale: int = 0):
        arr = _as_int64(entries).copy()
        if half_scale < 0:
            raise UsageError("half_scale must be nonnegative")
        if not arr.any():
            half_scale = 0
        else:
            orall = int(np.bitwise_or.reduce(np.abs(arr), axis=None))
            twos = (orall & -orall).bit_length() - 1
            shift = min(twos, half_scale // 2)
            if shift:
                arr >>= shift
                half_scale -= 2 * shift
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)
        object.__setattr__(self, "half_scale", half_scale)
        object.__setattr__(self, "_key", None)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(np.eye(n, dtype=np.int64))

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    def key(self) -> tuple:
        """Hashable canonical identity (normalized scale + entry bytes)."""
        k = self._key
        if k is None:
            k = (self.half_scale, self.shape, self.entries.tobytes())
            object.__setattr__(self, "_key", k)
        return k

    def __eq__(self, other) -> bool:
        return isinstance(other, ExactMatrix) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.shape[1] != other.shape[0]:
            raise UsageError(f"shape mismatch: {self.shape} @ {other.shape}")
        a, b = self.entries, other.entries
        if (
            int(np.abs(a).max(initial=0)) * int(np.abs(b).max(initial=0)) * a.shape[1]
            > _SAFE
        ):
            a = a.astype(object)
        return ExactMatrix(a @ b, self.half_scale + other.half_scale)

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        a, e = self._common_scale(other)
        return ExactMatrix(a[0] + a[1], e)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        a, e = self._common_scale(other)
        return ExactMatrix(a[0] - a[1], e)

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix(-self.entries, self.half_scale)

    def _common_scale(self, other: "ExactMatrix"):
        if self.shape != other.shape:
            raise UsageError("shape mismatch")
        e = max(self.half_scale, other.half_scale)
        if (e - self.half_scale) % 2 or (e - other.half_scale) % 2:
            raise UsageError("scales differ by an odd half power; sum is not dyadic")
        return (
            (
                self.entries << ((e - self.half_scale) // 2),
                other.entries << ((e - other.half_scale) // 2),
            ),
            e,
        )

    @property
    def T(self) -> "ExactMatrix":
        return ExactMatrix(self.entries.T, self.half_scale)

    def conjugate_by(self, g: "ExactMatrix") -> "ExactMatrix":
        """g @ self @ g.T for orthogonal g: the image under the isometry g."""
        return g @ self @ g.T

    def scaled_entries(self, target: int) -> np.ndarray:
        """Entries rescaled to the given common half_scale."""
        diff = target - self.half_scale
        if diff < 0 or diff % 2:
            raise UsageError("target half_scale must exceed current by an even amount")
        return self.entries << (diff // 2)

    def trace(self) -> Fraction:
        t = int(np.trace(self.entries))
        if self.half_scale % 2:
            if t:
                raise UsageError("trace is an odd power of sqrt(2); not rational")
            return Fraction(0)
        return Fraction(t, 1 << (self.half_scale // 2))

    def trace_product(self, other: "ExactMatrix") -> Fraction:
        """trace(self @ other), exactly."""
        if self.shape[1] != other.shape[0] or self.shape[0] != other.shape[1]:
            raise UsageError("shape mismatch")
        e = self.half_scale + other.half_scale
        a, b = self.entries, other.entries.T
        if int(np.abs(a).max(initial=0)) * int(np.abs(b).max(initial=0)) > _SAFE:
            a = a.astype(object)
        t = int(np.sum(a * b, dtype=object))
        if e % 2:
            if t:
                raise UsageError("trace is an odd power of sqrt(2); not rational")
            return Fraction(0)
        return Fraction(t, 1 << (e // 2))

    def is_orthogonal(self) -> bool:
        n = self.shape[0]
        if self.shape[1] != n:
            return False
        prod = self.entries.astype(object) @ self.entries.T
        return np.array_equal(prod, (1 << self.half_scale) * np.eye(n, dtype=object))

    def is_symmetric(self) -> bool:
        return np.array_equal(self.entries, self.entries.T)

    def is_idempotent(self) -> bool:
        if self.half_scale % 2:
            return False
        prod = self.entries.astype(object) @ self.entries
        return np.array_equal(prod, self.entries * (1 << (self.half_scale // 2)))

    def to_float(self) -> np.ndarray:
        return self.entries * (2.0 ** (-self.half_scale / 2))

    def __repr__(self) -> str:
        return f"ExactMatrix(half_scale={self.half_scale}, entries=\n{self.entries})"
