"""Packings built from totally singular subspaces: the full family over all
subspaces of a given dimension, restricted families from partial spreads or
cliques, and orbit closures of a coordinate plane under the normalizer
group.  Pairwise distances and principal-angle spectra are computed exactly
on the group side.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import acos, sqrt
from typing import Iterable, Sequence

import numpy as np

from .errors import BudgetExceededError, DomainError, UsageError
from .exact import ExactMatrix
from .extraspecial import CharacterAssignment, clifford_generators, plane_projection
from .f2 import (
    F2Subspace,
    count_totally_singular,
    enumerate_totally_singular,
    intersection_dim,
    is_totally_singular,
    quadratic_form_rank,
    subspace_intersection,
    subspace_sum,
)


@dataclass(frozen=True)
class GroupPlane:
    """An invariant plane: a totally singular subspace plus a character.

    The pair identifies the plane uniquely; the projection matrix is
    materialized on demand.
    """

    subspace: F2Subspace
    chi: int = 0

    @property
    def i(self) -> int:
        return self.subspace.n // 2

    @property
    def k(self) -> int:
        return self.i - self.subspace.dim

    @property
    def m(self) -> int:
        return 1 << self.i

    @property
    def n(self) -> int:
        return 1 << self.k

    @property
    def character(self) -> CharacterAssignment:
        return CharacterAssignment(self.subspace, self.chi)

    def projection(self) -> ExactMatrix:
        return plane_projection(self.character)


@dataclass
class Packing:
    """A set of n-dimensional planes of R^m with a provenance tag.

    Planes may be GroupPlane values, exact projection matrices, or float
    orthonormal basis arrays (n x m rows).  claimed_d2 records what the
    construction promises for the squared minimal distance; it is a lower
    bound when claimed_is_lower_bound is set, otherwise the exact minimum.
    """

    m: int
    n: int
    planes: list
    provenance: str
    claimed_d2: Fraction | None = None
    claimed_is_lower_bound: bool = False
    meta: dict = field(default_factory=dict)

    @property
    def N(self) -> int:
        return len(self.planes)


def _pow2_fraction(exponent: int) -> Fraction:
    if exponent >= 0:
        return Fraction(1 << exponent)
    return Fraction(1, 1 << -exponent)


def theorem1(i: int, k: int) -> Packing:
    """All invariant planes of all totally singular (i-k)-subspaces:
    2^(i-k) * count planes in G(2^i, 2^k) with squared minimal distance
    2^(k-1) (1/2 for k = 0)."""
    if not 0 <= k <= i - 1:
        raise UsageError(f"need 0 <= k <= i-1, got i={i}, k={k}")
    d = i - k
    planes = [
        GroupPlane(sub, chi)
        for sub in enumerate_totally_singular(i, d)
        for chi in range(1 << d)
    ]
    assert len(planes) == (1 << d) * count_totally_singular(i, k)
    return Packing(
        m=1 << i,
        n=1 << k,
        planes=planes,
        provenance=f"theorem1(i={i},k={k})",
        claimed_d2=_pow2_fraction(k - 1),
    )


def _check_same_family(p: GroupPlane, q: GroupPlane) -> None:
    if p.subspace.n != q.subspace.n or p.subspace.dim != q.subspace.dim:
        raise UsageError("planes come from different parameter families")


def _characters_agree(p: GroupPlane, q: GroupPlane, meet: F2Subspace) -> bool:
    cp, cq = p.character, q.character
    return all(cp.sign(w) == cq.sign(w) for w in meet.rows)


def pair_distance(p: GroupPlane, q: GroupPlane) -> Fraction:
    """Exact squared chordal distance between two invariant planes.

    trace(Pi_p Pi_q) is 2^(2k-i+t) when the characters agree on the
    t-dimensional intersection of the subspaces and 0 otherwise; the
    squared distance is 2^k minus that trace.
    """
    _check_same_family(p, q)
    i, k = p.i, p.k
    if p.subspace == q.subspace:
        return Fraction(0) if p.chi == q.chi else Fraction(1 << k)
    meet = subspace_intersection(p.subspace, q.subspace)
    if not _characters_agree(p, q, meet):
        return Fraction(1 << k)
    return Fraction(1 << k) - _pow2_fraction(2 * k - i + meet.dim)


def exact_cos_sq_spectrum(p: GroupPlane, q: GroupPlane) -> list[tuple[Fraction, int]]:
    """Squared cosines of the principal angles with multiplicities, largest
    first.  Either all angles are pi/2, or 2^(2k-i+t+r/2) of them equal
    arccos 2^(-r/4) with r the rank of the quadratic form on the span of
    the two subspaces, and the rest equal pi/2."""
    _check_same_family(p, q)
    i, k = p.i, p.k
    n = 1 << k
    if p.subspace == q.subspace:
        meet = p.subspace
        agree = p.chi == q.chi
    else:
        meet = subspace_intersection(p.subspace, q.subspace)
        agree = _characters_agree(p, q, meet)
    if not agree:
        return [(Fraction(0), n)]
    span = subspace_sum(p.subspace, q.subspace)
    r = quadratic_form_rank(span)
    if r % 2:
        raise DomainError(
            "odd quadratic-form rank on the span; the angle formula does not apply"
        )
    exp = 2 * k - i + meet.dim + r // 2
    if exp < 0 or (1 << exp) > n:
        raise DomainError("inconsistent principal-angle multiplicity")
    n1 = 1 << exp
    cos_sq = _pow2_fraction(-(r // 2))
    # Sanity: the spectrum must reproduce the exact pair distance.
    assert n - n1 * cos_sq == pair_distance(p, q)
    out = [(cos_sq, n1)]
    if n1 < n:
        out.append((Fraction(0), n - n1))
    return out


def principal_angle_spectrum(p: GroupPlane, q: GroupPlane) -> tuple[float, ...]:
    """Principal angles between two invariant planes, ascending, in radians."""
    angles: list[float] = []
    for cos_sq, mult in exact_cos_sq_spectrum(p, q):
        angles.extend([acos(sqrt(float(cos_sq)))] * mult)
    return tuple(sorted(angles))


def theorem2(subspaces: Sequence[F2Subspace], l: int) -> Packing:
    """Invariant planes of a family of totally singular (i-k)-subspaces
    pairwise intersecting in dimension at most l: 2^(i-k) * M planes with
    squared minimal distance at least 2^k - 2^(2k+l-i), with equality iff
    some pair meets in dimension exactly l."""
    subs = list(subspaces)
    if not subs:
        raise UsageError("need at least one subspace")
    n_amb = subs[0].n
    if n_amb % 2:
        raise UsageError("ambient length must be even")
    i = n_amb // 2
    d = subs[0].dim
    for s in subs:
        if s.n != n_amb or s.dim != d:
            raise UsageError("subspaces must share ambient length and dimension")
        if not is_totally_singular(s):
            raise DomainError(f"subspace with basis {s.rows} is not totally singular")
    if not 0 <= l < d:
        raise UsageError(f"need 0 <= l < dim, got l={l}, dim={d}")
    max_t = -1
    for a in range(len(subs)):
        for b in range(a + 1, len(subs)):
            t = intersection_dim(subs[a], subs[b])
            if t > l:
                raise DomainError(
                    f"subspaces {a} and {b} intersect in dimension {t} > {l}"
                )
            max_t = max(max_t, t)
    k = i - d
    planes = [GroupPlane(s, chi) for s in subs for chi in range(1 << d)]
    bound = Fraction(1 << k) - _pow2_fraction(2 * k + l - i)
    tight = max_t == l
    return Packing(
        m=1 << i,
        n=1 << k,
        planes=planes,
        provenance=f"theorem2(i={i},k={k},l={l},M={len(subs)})",
        claimed_d2=bound,
        claimed_is_lower_bound=not tight,
        meta={"module_count": len(subs), "bound_is_attained": tight},
    )


def orbit_packing(i: int, n: int, max_planes: int | None = None) -> Packing:
    """Breadth-first closure of the projection onto the first n coordinates
    under conjugation by the normalizer generators, deduplicated by the
    normalized exact matrix."""
    m = 1 << i
    if not 1 <= n < m:
        raise UsageError(f"need 1 <= n < {m}, got {n}")
    gens = clifford_generators(i)
    start = ExactMatrix(np.diag([1] * n + [0] * (m - n)).astype(np.int64))
    seen = {start.key()}
    planes = [start]
    queue = deque([start])
    while queue:
        mat = queue.popleft()
        for g in gens:
            img = g @ mat @ g.T
            key = img.key()
            if key not in seen:
                seen.add(key)
                planes.append(img)
                queue.append(img)
                if max_planes is not None and len(planes) > max_planes:
                    raise BudgetExceededError(
                        f"orbit exceeded {max_planes} planes", partial=planes
                    )
    return Packing(
        m=m,
        n=n,
        planes=planes,
        provenance=f"orbit(i={i},n={n})",
    )
