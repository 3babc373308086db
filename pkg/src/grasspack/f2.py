"""Linear algebra over F2 on int bitsets, plus the quadratic/bilinear forms
of the binary orthogonal space underlying the constructions.

Vectors are plain Python ints.  A vector of length n has coordinate c stored
at bit position n-1-c, so reading the bit string left to right matches the
int's binary digits and lexicographic order on strings equals numeric order.

A vector of the 2i-dimensional space Ebar packs the pair (a, b), a first:
v = (a << i) | b, with a, b of length i.  The quadratic form is
Q(v) = a.b (mod 2) and its polarization is B(v, w) = a.b' + a'.b (mod 2).
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from .errors import UsageError

# Vectors over F2 are ints; addition is XOR.
F2Vector = int


def dot(x: int, y: int) -> int:
    """Standard inner product of two bitset vectors, mod 2."""
    return (x & y).bit_count() & 1


def pivot(v: int) -> int:
    """Bit position of the leading (leftmost) coordinate of v != 0."""
    return v.bit_length() - 1


def split_pair(v: int, i: int) -> tuple[int, int]:
    """Unpack v in Ebar as the pair (a, b)."""
    return v >> i, v & ((1 << i) - 1)


def join_pair(a: int, b: int, i: int) -> int:
    """Pack (a, b) into a single Ebar vector."""
    return (a << i) | b


def quadratic_form(v: int, i: int) -> int:
    """Q(v) = a.b for v = (a, b) in Ebar."""
    return ((v >> i) & v).bit_count() & 1


def bilinear_form(v: int, w: int, i: int) -> int:
    """B(v, w) = a.b' + a'.b, the polarization of Q."""
    mask = (1 << i) - 1
    return (((v >> i) & w & mask).bit_count() + ((w >> i) & v & mask).bit_count()) & 1


@dataclass(frozen=True)
class OrthogonalSpace:
    """The orthogonal space Ebar of dimension 2i with maximal Witt index."""

    i: int

    def __post_init__(self):
        if self.i < 1:
            raise UsageError(f"need i >= 1, got {self.i}")

    @property
    def ambient(self) -> int:
        return 2 * self.i

    @property
    def m(self) -> int:
        """Dimension of the real parent space: 2^i."""
        return 1 << self.i


@dataclass(frozen=True)
class F2Subspace:
    """A subspace of F2^n held as its reduced-row-echelon canonical basis.

    Rows are sorted by decreasing pivot and each pivot column contains a
    single 1, so two subspaces are equal iff their row tuples are identical.
    """

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        pivots = 0
        prev = self.n
        for r in self.rows:
            if r <= 0 or pivot(r) >= prev:
                raise UsageError("rows are not in strictly decreasing echelon order")
            prev = pivot(r)
            pivots |= 1 << prev
        for r in self.rows:
            if r & pivots != 1 << pivot(r):
                raise UsageError("a pivot column has more than one nonzero entry")

    @property
    def dim(self) -> int:
        return len(self.rows)

    def contains(self, v: int) -> bool:
        for r in self.rows:
            if v & (1 << pivot(r)):
                v ^= r
        return v == 0

    def coefficients(self, v: int) -> int:
        """Coefficient mask of v over the canonical basis (bit j <-> rows[j])."""
        c = 0
        for j, r in enumerate(self.rows):
            if v & (1 << pivot(r)):
                v ^= r
                c |= 1 << j
        if v:
            raise UsageError("vector is not in the subspace")
        return c

    def element(self, c: int) -> int:
        """Element with coefficient mask c (inverse of coefficients())."""
        v = 0
        for j, r in enumerate(self.rows):
            if c & (1 << j):
                v ^= r
        return v

    def elements(self) -> Iterator[int]:
        """All 2^dim elements, in coefficient-mask order (starts with 0)."""
        for c in range(1 << self.dim):
            yield self.element(c)


def canonicalize(rows: Iterable[int], n: int) -> F2Subspace:
    """Reduced-row-echelon basis of the span of the given length-n rows."""
    basis: list[int] = []
    for v in rows:
        if not 0 <= v < (1 << n):
            raise UsageError(f"row {v} does not fit in ambient length {n}")
        for b in basis:
            if v & (1 << pivot(b)):
                v ^= b
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    for j in range(len(basis)):
        pj = 1 << pivot(basis[j])
        for t in range(j):
            if basis[t] & pj:
                basis[t] ^= basis[j]
    return F2Subspace(n, tuple(basis))


def rank(rows: Iterable[int]) -> int:
    """Rank of a collection of bitset rows (forward elimination only)."""
    basis: list[int] = []
    for v in rows:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    return len(basis)


def subspace_sum(s1: F2Subspace, s2: F2Subspace) -> F2Subspace:
    if s1.n != s2.n:
        raise UsageError("ambient lengths differ")
    return canonicalize(s1.rows + s2.rows, s1.n)


def intersection_dim(s1: F2Subspace, s2: F2Subspace) -> int:
    """dim(s1 ∩ s2) via dim s1 + dim s2 - dim(s1 + s2)."""
    if s1.n != s2.n:
        raise UsageError("ambient lengths differ")
    return s1.dim + s2.dim - rank(s1.rows + s2.rows)


def subspace_intersection(s1: F2Subspace, s2: F2Subspace) -> F2Subspace:
    """Canonical basis of s1 ∩ s2."""
    if s1.n != s2.n:
        raise UsageError("ambient lengths differ")
    if s1.rows == s2.rows:
        return s1
    small, large = (s1, s2) if s1.dim <= s2.dim else (s2, s1)
    hits = [v for v in small.elements() if v and large.contains(v)]
    return canonicalize(hits, s1.n)


def is_totally_singular(s: F2Subspace) -> bool:
    """True iff Q vanishes on all of s.

    Q on basis rows plus B on basis pairs suffices, by polarization.
    """
    if s.n % 2:
        raise UsageError("ambient length must be even (a space of pairs)")
    i = s.n // 2
    rows = s.rows
    if any(quadratic_form(r, i) for r in rows):
        return False
    return not any(
        bilinear_form(rows[j], rows[t], i) for j in range(len(rows)) for t in range(j)
    )


@lru_cache(maxsize=None)
def singular_vectors(i: int) -> tuple[int, ...]:
    """All nonzero singular points of Ebar, ascending."""
    return tuple(v for v in range(1, 1 << (2 * i)) if quadratic_form(v, i) == 0)


# Levels of the enumeration tree, per i: _TS_LEVELS[i][d] lists the canonical
# row tuples of all totally singular d-subspaces, sorted.
_TS_LEVELS: dict[int, list[list[tuple[int, ...]]]] = {}


def _ts_level(i: int, d: int) -> list[tuple[int, ...]]:
    levels = _TS_LEVELS.setdefault(i, [[()]])
    sing = singular_vectors(i)
    mask = (1 << i) - 1
    while len(levels) <= d:
        nxt: list[tuple[int, ...]] = []
        for rows in levels[-1]:
            # A child's canonical basis is the parent's rows plus one new
            # last row w with a strictly smaller pivot, zero at the parent
            # pivots (automatic, w is below them), the parent rows zero at
            # pivot(w), w singular and B-orthogonal to the parent.
            bound = 1 << pivot(rows[-1]) if rows else 1 << (2 * i)
            ormask = 0
            for r in rows:
                ormask |= r
            for w in sing[: bisect_left(sing, bound)]:
                if ormask & (1 << pivot(w)):
                    continue
                wa = w >> i
                wb = w & mask
                ok = True
                for r in rows:
                    if (((r >> i) & wb).bit_count() + (wa & r & mask).bit_count()) & 1:
                        ok = False
                        break
                if ok:
                    nxt.append(rows + (w,))
        nxt.sort()
        levels.append(nxt)
    return levels[d]


def enumerate_totally_singular(space: OrthogonalSpace | int, d: int) -> Iterator[F2Subspace]:
    """All totally singular d-subspaces of Ebar, each exactly once, in
    lexicographic order of the canonical basis."""
    i = space.i if isinstance(space, OrthogonalSpace) else space
    if i < 1:
        raise UsageError(f"need i >= 1, got {i}")
    if not 0 <= d <= i:
        raise UsageError(f"totally singular dimension must lie in [0, {i}], got {d}")
    for rows in _ts_level(i, d):
        yield F2Subspace(2 * i, rows)


def gaussian_binomial(n: int, k: int, q: int = 2) -> int:
    """The q-binomial coefficient counting k-subspaces of F_q^n."""
    if not 0 <= k <= n:
        return 0
    num = den = 1
    for t in range(k):
        num *= q ** (n - t) - 1
        den *= q ** (t + 1) - 1
    assert num % den == 0
    return num // den


def count_totally_singular(i: int, k: int) -> int:
    """Number of totally singular (i-k)-subspaces of Ebar, exactly."""
    if not 0 <= k <= i:
        raise UsageError(f"need 0 <= k <= i, got k={k}, i={i}")
    count = gaussian_binomial(i, k)
    for j in range(k, i):
        count *= (1 << j) + 1
    return count


def quadratic_form_rank(s: F2Subspace) -> int:
    """Rank of Q restricted to s: dim s minus the dimension of the singular
    part of the radical of B restricted to s."""
    if s.n % 2:
        raise UsageError("ambient length must be even")
    i = s.n // 2
    rows = s.rows
    radical = [
        v for v in s.elements() if all(bilinear_form(v, r, i) == 0 for r in rows)
    ]
    singular_radical = sum(1 for v in radical if quadratic_form(v, i) == 0)
    # Q is linear on the radical, so its zero set there is a subgroup.
    return s.dim - (singular_radical.bit_length() - 1)
