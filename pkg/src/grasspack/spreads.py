"""Spreads feeding the restricted-family packings: partitions of the
singular points of Ebar into maximal totally singular subspaces (exists
iff i is even), and partitions of F2^i into the scalar-multiple classes
of a subfield (the projective-space spread), transported into each
partition member.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError, UsageError
from .f2 import (
    F2Subspace,
    canonicalize,
    enumerate_totally_singular,
    singular_vectors,
)


@dataclass(frozen=True)
class OrthogonalSpread:
    """2^(i-1) + 1 maximal totally singular i-subspaces partitioning the
    nonzero singular points of Ebar."""

    i: int
    members: tuple[F2Subspace, ...]


@dataclass(frozen=True)
class FieldSpread:
    """(2^i - 1)/(2^j - 1) j-dimensional subspaces of F2^i meeting pairwise
    in 0 and covering every nonzero vector."""

    i: int
    j: int
    members: tuple[F2Subspace, ...]


def _point_mask(sub: F2Subspace, index: dict[int, int]) -> int:
    mask = 0
    for v in sub.elements():
        if v:
            mask |= 1 << index[v]
    return mask


@lru_cache(maxsize=None)
def orthogonal_spread(i: int) -> OrthogonalSpread:
    """Deterministic exact-cover search over the maximal totally singular
    subspaces; the first partition in search order is returned."""
    if i % 2 or i < 2:
        raise DomainError(
            f"a partition into maximal totally singular subspaces exists iff i is even; got i={i}"
        )
    maximal = list(enumerate_totally_singular(i, i))
    points = list(singular_vectors(i))
    index = {v: t for t, v in enumerate(points)}
    masks = [_point_mask(s, index) for s in maximal]
    covering: list[list[int]] = [[] for _ in points]
    for s_idx, mask in enumerate(masks):
        for t in range(len(points)):
            if mask >> t & 1:
                covering[t].append(s_idx)
    want = (1 << (i - 1)) + 1
    full = (1 << len(points)) - 1
    chosen: list[int] = []

    def search(covered: int) -> bool:
        if covered == full:
            return True
        t = (covered + 1 & ~covered).bit_length() - 1  # lowest uncovered point
        for s_idx in covering[t]:
            if masks[s_idx] & covered:
                continue
            chosen.append(s_idx)
            if search(covered | masks[s_idx]):
                return True
            chosen.pop()
        return False

    if not search(0):
        raise DomainError(f"no partition found for i={i}")
    members = tuple(maximal[s] for s in chosen)
    assert len(members) == want
    return OrthogonalSpread(i, members)


def _is_irreducible(poly: int, degree: int) -> bool:
    """Irreducibility over F2 via gcd(x^(2^t) - x, poly) checks."""

    def mulmod(a: int, b: int) -> int:
        r = 0
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a >> degree & 1:
                a ^= poly
        return r

    # x^(2^t) mod poly by repeated squaring of x.
    xq = 2
    for t in range(1, degree + 1):
        xq = mulmod(xq, xq)
        if t < degree and xq == 2:
            return False  # x^(2^t) = x: a root lives in a proper subfield
        if t < degree:
            # gcd(x^(2^t) + x, poly) must be 1 for all proper t.
            g = _poly_gcd(xq ^ 2, poly)
            if g != 1:
                return False
    return xq == 2


def _poly_gcd(a: int, b: int) -> int:
    while b:
        while a.bit_length() >= b.bit_length() and a:
            a ^= b << (a.bit_length() - b.bit_length())
        a, b = b, a
    return a


@lru_cache(maxsize=None)
def least_irreducible(degree: int) -> int:
    """Smallest irreducible polynomial of the given degree over F2, as an
    int bitmask (for degree 3 this is x^3 + x + 1 = 0b1011)."""
    if degree < 1:
        raise UsageError("degree must be positive")
    for poly in range(1 << degree, 1 << (degree + 1)):
        if poly & 1 and _is_irreducible(poly, degree):
            return poly
    raise AssertionError("unreachable: irreducibles exist in every degree")


class BinaryField:
    """F_{2^i} as ints under XOR and polynomial multiplication modulo the
    least irreducible polynomial of degree i."""

    def __init__(self, i: int):
        self.i = i
        self.modulus = least_irreducible(i)
        self.order = 1 << i

    def mul(self, a: int, b: int) -> int:
        r = 0
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a >> self.i & 1:
                a ^= self.modulus
        return r

    def pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def element_order(self, a: int) -> int:
        assert a
        n = self.order - 1
        for div in sorted(_divisors(n)):
            if self.pow(a, div) == 1:
                return div
        raise AssertionError("unreachable")

    @property
    def generator(self) -> int:
        for g in range(2, self.order):
            if self.element_order(g) == self.order - 1:
                return g
        raise AssertionError("the multiplicative group is cyclic")


def _divisors(n: int) -> list[int]:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return out


@lru_cache(maxsize=None)
def field_spread(i: int, j: int) -> FieldSpread:
    """Partition of the nonzero vectors of F2^i into the F_{2^j}-scalar
    classes of coset representatives of the subfield of order 2^j."""
    if i < 1 or j < 1 or i % j:
        raise DomainError(f"need j | i, got i={i}, j={j}")
    if i == j:
        full = canonicalize(range(1, 1 << i), i)
        return FieldSpread(i, j, (full,))
    fld = BinaryField(i)
    g = fld.generator
    step = (fld.order - 1) // ((1 << j) - 1)
    subfield_units = [fld.pow(g, step * t) for t in range((1 << j) - 1)]
    members = []
    for c in range(step):
        rep = fld.pow(g, c)
        vecs = [fld.mul(rep, h) for h in subfield_units]
        members.append(canonicalize(vecs, i))
    covered = set()
    for s in members:
        assert s.dim == j
        for v in s.elements():
            if v:
                assert v not in covered
                covered.add(v)
    assert len(covered) == fld.order - 1
    return FieldSpread(i, j, tuple(members))


def example_b(i: int, j: int) -> list[F2Subspace]:
    """Totally singular j-subspaces meeting pairwise in 0: every member of
    the orthogonal spread, partitioned by a transported field spread.

    Yields (2^(i-1)+1)(2^i-1)/(2^j-1) subspaces; feeding them to the
    restricted-family construction gives 2^j times as many planes in
    G(2^i, 2^(i-j)) at squared distance 2^(i-j) - 2^(i-2j).
    """
    if i % 2:
        raise DomainError(f"need i even, got i={i}")
    if i < 1 or j < 1 or i % j:
        raise DomainError(f"need j | i, got i={i}, j={j}")
    ospread = orthogonal_spread(i)
    fspread = field_spread(i, j)
    out: list[F2Subspace] = []
    for member in ospread.members:
        basis = member.rows  # image of the standard basis of F2^i
        for part in fspread.members:
            image = []
            for v in part.rows:
                w = 0
                for c in range(i):
                    if v >> (i - 1 - c) & 1:
                        w ^= basis[c]
                image.append(w)
            out.append(canonicalize(image, 2 * i))
    return out
