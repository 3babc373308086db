"""The group of signed operators (-1)^s X(a) Y(b) on R^(2^i), its signed
permutation matrices, characters of the abelian preimages of totally
singular subspaces, the resulting invariant-plane projections, and the
generators of the normalizer group used for orbit enumeration.

X(a) shifts coordinates, e_u -> e_{u+a}; Y(b) flips signs, e_u ->
(-1)^(b.u) e_u.  Products follow
(-1)^s X(a)Y(b) (-1)^s' X(a')Y(b') = (-1)^(a'.b+s+s') X(a+a')Y(b+b').
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError, UsageError
from .exact import ExactMatrix
from .f2 import F2Subspace, dot, is_totally_singular, pivot, split_pair


@dataclass(frozen=True)
class GroupElement:
    """(-1)^sign X(a) Y(b) acting on R^(2^i)."""

    i: int
    sign: int
    a: int
    b: int

    @classmethod
    def identity(cls, i: int) -> "GroupElement":
        return cls(i, 0, 0, 0)

    @classmethod
    def x(cls, a: int, i: int) -> "GroupElement":
        return cls(i, 0, a, 0)

    @classmethod
    def y(cls, b: int, i: int) -> "GroupElement":
        return cls(i, 0, 0, b)

    @classmethod
    def lift(cls, v: int, i: int) -> "GroupElement":
        """Canonical lift X(a)Y(b), sign 0, of v = (a, b) in Ebar."""
        a, b = split_pair(v, i)
        return cls(i, 0, a, b)

    @property
    def ebar(self) -> int:
        """Image in the quotient Ebar (the sign is lost)."""
        return (self.a << self.i) | self.b

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if not isinstance(other, GroupElement):
            return NotImplemented
        if self.i != other.i:
            raise UsageError("elements live on different coordinate cubes")
        s = (self.sign + other.sign + dot(other.a, self.b)) & 1
        return GroupElement(self.i, s, self.a ^ other.a, self.b ^ other.b)

    def __neg__(self) -> "GroupElement":
        return GroupElement(self.i, self.sign ^ 1, self.a, self.b)

    def inverse(self) -> "GroupElement":
        # g = (-1)^s X(a)Y(b); g^2 = (-1)^(a.b) I, so g^-1 = (-1)^(a.b) g.
        return GroupElement(self.i, (self.sign + dot(self.a, self.b)) & 1, self.a, self.b)

    def square_sign(self) -> int:
        """s with g^2 = (-1)^s I; equals Q of the image in Ebar."""
        return dot(self.a, self.b)


def multiply(g: GroupElement, h: GroupElement) -> GroupElement:
    return g * h


def as_matrix(g: GroupElement) -> ExactMatrix:
    """The signed permutation matrix sending e_u to (-1)^(sign+b.u) e_{u+a}."""
    m = 1 << g.i
    mat = np.zeros((m, m), dtype=np.int64)
    for u in range(m):
        mat[u ^ g.a, u] = -1 if (g.sign + dot(g.b, u)) & 1 else 1
    return ExactMatrix(mat)


def cocycle_sign(u: int, v: int, i: int) -> int:
    """s with lift(u) lift(v) = (-1)^s lift(u+v)."""
    prod = GroupElement.lift(u, i) * GroupElement.lift(v, i)
    return prod.sign


@dataclass(frozen=True)
class CharacterAssignment:
    """A character of the abelian preimage of a totally singular subspace,
    pinned down by its signs on the canonical lifts.

    The canonical basis lifts get sign (-1)^(chi_j) where chi is a bitmask
    over the basis rows; signs elsewhere follow from the group law.  chi = 0
    is the assignment that is +1 on every basis lift.
    """

    subspace: F2Subspace
    chi: int = 0

    @property
    def i(self) -> int:
        return self.subspace.n // 2

    def sign(self, v: int) -> int:
        """Character value (+1 or -1) on the canonical lift of v."""
        c = self.subspace.coefficients(v)
        acc = GroupElement.identity(self.i)
        for j, row in enumerate(self.subspace.rows):
            if c & (1 << j):
                acc = acc * GroupElement.lift(row, self.i)
        s = acc.sign ^ ((self.chi & c).bit_count() & 1)
        return -1 if s else 1


def solve_character(subspace: F2Subspace) -> CharacterAssignment:
    """One valid character assignment: +1 on every canonical basis lift."""
    if not is_totally_singular(subspace):
        raise DomainError("subspace is not totally singular; its preimage is non-abelian")
    return CharacterAssignment(subspace, 0)


def characters(subspace: F2Subspace) -> list[CharacterAssignment]:
    """All 2^dim character assignments, in chi order."""
    if not is_totally_singular(subspace):
        raise DomainError("subspace is not totally singular; its preimage is non-abelian")
    return [CharacterAssignment(subspace, chi) for chi in range(1 << subspace.dim)]


def plane_projection(char: CharacterAssignment) -> ExactMatrix:
    """Orthogonal projection 2^(-d) sum_v chi(v) M(lift(v)) onto the
    invariant plane of the character."""
    sub = char.subspace
    i = char.i
    m = 1 << i
    d = sub.dim
    total = np.zeros((m, m), dtype=np.int64)
    for c in range(1 << d):
        acc = GroupElement.identity(i)
        for j, row in enumerate(sub.rows):
            if c & (1 << j):
                acc = acc * GroupElement.lift(row, i)
        s = acc.sign ^ ((char.chi & c).bit_count() & 1)
        coeff = -1 if s else 1
        # Add coeff * M(acc without its sign): column u -> row u^a.
        for u in range(m):
            total[u ^ acc.a, u] += coeff if not dot(acc.b, u) else -coeff
    return ExactMatrix(total, 2 * d)


def invariant_planes(subspace: F2Subspace) -> list[tuple[CharacterAssignment, ExactMatrix]]:
    """The 2^dim mutually orthogonal invariant planes of a totally singular
    subspace, one projection per character, in chi order."""
    return [(char, plane_projection(char)) for char in characters(subspace)]


def gl_apply(rows: tuple[int, ...], u: int) -> int:
    """Apply an invertible F2 matrix (coordinate-indexed row masks) to u."""
    i = len(rows)
    out = 0
    for c, row in enumerate(rows):
        if (row & u).bit_count() & 1:
            out |= 1 << (i - 1 - c)
    return out


def coordinate_permutation(rows: tuple[int, ...], a: int, i: int) -> ExactMatrix:
    """The orthogonal matrix e_u -> e_{Au+a} for invertible A over F2."""
    if len(rows) != i:
        raise UsageError("matrix size does not match i")
    m = 1 << i
    mat = np.zeros((m, m), dtype=np.int64)
    for u in range(m):
        mat[gl_apply(rows, u) ^ a, u] = 1
    return ExactMatrix(mat)


def sign_flip_matrix(i: int) -> ExactMatrix:
    """The symmetric orthogonal matrix with entries 2^(-i/2) (-1)^(u.v)."""
    m = 1 << i
    mat = np.empty((m, m), dtype=np.int64)
    for u in range(m):
        for v in range(m):
            mat[u, v] = -1 if dot(u, v) else 1
    return ExactMatrix(mat, i)


def gl_generators(i: int) -> list[tuple[int, ...]]:
    """Row masks for a transvection and a coordinate cycle, which together
    generate the invertible i x i matrices over F2 (for i >= 2)."""
    if i < 2:
        return []
    unit = lambda c: 1 << (i - 1 - c)
    identity = [unit(c) for c in range(i)]
    transvection = tuple(
        unit(0) | unit(1) if c == 0 else identity[c] for c in range(i)
    )
    cycle = tuple(unit((c - 1) % i) for c in range(i))
    return [transvection, cycle]


@lru_cache(maxsize=None)
def clifford_generators(i: int) -> tuple[ExactMatrix, ...]:
    """Matrices generating the normalizer of the signed-operator group:
    the X and Y unit-vector operators, two coordinate-permutation
    generators, and the scaled sign matrix."""
    if i < 1:
        raise UsageError(f"need i >= 1, got {i}")
    gens: list[ExactMatrix] = []
    for c in range(i):
        gens.append(as_matrix(GroupElement.x(1 << (i - 1 - c), i)))
    for c in range(i):
        gens.append(as_matrix(GroupElement.y(1 << (i - 1 - c), i)))
    for rows in gl_generators(i):
        gens.append(coordinate_permutation(rows, 0, i))
    gens.append(sign_flip_matrix(i))
    return tuple(gens)
