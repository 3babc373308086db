"""Real-side plane representation, chordal distances, principal angles,
the simplex and orthoplex bounds, and whole-packing verification.

A plane in G(m, n) is held either as an n x m matrix of orthonormal
spanning rows or as the m x m orthogonal projection onto it; the two are
linked by Pi = A^t A.  Distances use d^2(P, Q) = n - trace(Pi_P Pi_Q).
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import acos, asin, isclose, sqrt

import numpy as np

from .errors import UsageError
from .exact import ExactMatrix

FLOAT_TOL = 1e-9
RANK_TOL = 1e-12


def orthonormalize(rows: np.ndarray) -> np.ndarray:
    """Modified Gram-Schmidt with row pivoting; raises on rank deficiency."""
    work = np.array(rows, dtype=float)
    n, m = work.shape
    out = np.empty_like(work)
    for j in range(n):
        norms = np.linalg.norm(work[j:], axis=1)
        best = int(np.argmax(norms))
        if norms[best] < RANK_TOL:
            raise UsageError("spanning set is rank deficient")
        work[[j, j + best]] = work[[j + best, j]]
        out[j] = work[j] / norms[best]
        for t in range(j + 1, n):
            work[t] -= np.dot(work[t], out[j]) * out[j]
    return out


class Plane:
    """A point of G(m, n), exact (projection matrix) or floating (basis)."""

    __slots__ = ("m", "n", "exact_projection", "_basis")

    def __init__(self, *, exact_projection: ExactMatrix | None = None, basis=None):
        if (exact_projection is None) == (basis is None):
            raise UsageError("give exactly one of exact_projection or basis")
        if exact_projection is not None:
            if not (
                exact_projection.is_symmetric() and exact_projection.is_idempotent()
            ):
                raise UsageError("exact matrix is not an orthogonal projection")
            tr = exact_projection.trace()
            if tr.denominator != 1:
                raise UsageError("projection trace is not an integer")
            self.m = exact_projection.shape[0]
            self.n = int(tr)
            self.exact_projection = exact_projection
            self._basis = None
        else:
            b = np.array(basis, dtype=float)
            if b.ndim != 2:
                raise UsageError("basis must be an n x m array of rows")
            gram = b @ b.T
            if not np.allclose(gram, np.eye(b.shape[0]), atol=1e-8):
                raise UsageError("basis rows are not orthonormal")
            self.n, self.m = b.shape
            self.exact_projection = None
            self._basis = b

    @classmethod
    def from_basis(cls, rows, orthonormal: bool = True) -> "Plane":
        if not orthonormal:
            rows = orthonormalize(np.asarray(rows, dtype=float))
        return cls(basis=rows)

    @classmethod
    def from_projection(cls, proj) -> "Plane":
        if isinstance(proj, ExactMatrix):
            return cls(exact_projection=proj)
        p = np.array(proj, dtype=float)
        if not np.allclose(p, p.T, atol=1e-8) or not np.allclose(p @ p, p, atol=1e-8):
            raise UsageError("matrix is not (numerically) an orthogonal projection")
        n = int(round(np.trace(p)))
        evals, evecs = np.linalg.eigh(p)
        basis = evecs[:, evals > 0.5].T
        plane = cls(basis=basis)
        if plane.n != n:
            raise UsageError("projection rank and trace disagree")
        return plane

    @property
    def is_exact(self) -> bool:
        return self.exact_projection is not None

    def basis_float(self) -> np.ndarray:
        if self._basis is None:
            p = self.exact_projection.to_float()
            evals, evecs = np.linalg.eigh(p)
            self._basis = evecs[:, evals > 0.5].T
        return self._basis

    def projection_float(self) -> np.ndarray:
        if self.exact_projection is not None:
            return self.exact_projection.to_float()
        b = self._basis
        return b.T @ b


def _check_match(p: Plane, q: Plane) -> None:
    if p.m != q.m or p.n != q.n:
        raise UsageError(
            f"planes have mismatched dimensions: ({p.n},{p.m}) vs ({q.n},{q.m})"
        )


def chordal_distance_sq(p: Plane, q: Plane) -> Fraction | float:
    """n - trace(Pi_P Pi_Q); exact when both planes are exact."""
    _check_match(p, q)
    if p.is_exact and q.is_exact:
        return p.n - p.exact_projection.trace_product(q.exact_projection)
    a, b = p.basis_float(), q.basis_float()
    cross = a @ b.T
    return p.n - float(np.sum(cross * cross))


def principal_angles(p: Plane, q: Plane) -> tuple[float, ...]:
    """Principal angles in [0, pi/2], ascending.

    Cosines come from the singular values of A_P A_Q^t; angles below pi/4
    are refined through the sine route (SVD of the components of Q's basis
    orthogonal to P), which stays accurate for tiny angles.
    """
    _check_match(p, q)
    a, b = p.basis_float(), q.basis_float()
    cross = a @ b.T
    cosines = np.clip(np.linalg.svd(cross, compute_uv=False), 0.0, 1.0)
    residual = b - cross.T @ a
    sines = np.sort(np.clip(np.linalg.svd(residual, compute_uv=False), 0.0, 1.0))
    angles = []
    for j, c in enumerate(cosines):
        if c > 0.7071:
            angles.append(asin(sines[j]))
        else:
            angles.append(acos(c))
    return tuple(sorted(angles))


@dataclass(frozen=True)
class BoundInfo:
    """The two packing bounds with their applicability thresholds."""

    m: int
    n: int
    N: int
    simplex: Fraction
    orthoplex: Fraction
    D: int

    @property
    def simplex_equality_max_N(self) -> int:
        return self.D + 1

    @property
    def orthoplex_equality_max_N(self) -> int:
        return 2 * self.D


def simplex_bound(m: int, n: int, N: int) -> Fraction:
    """d^2 <= n(m-n)/m * N/(N-1); equality needs N <= D+1."""
    if N < 2:
        raise UsageError("the bound needs at least two planes")
    return Fraction(n * (m - n), m) * Fraction(N, N - 1)


def orthoplex_bound(m: int, n: int) -> Fraction:
    """d^2 <= n(m-n)/m for N > D+1; equality needs N <= 2D."""
    return Fraction(n * (m - n), m)


def bound_info(m: int, n: int, N: int) -> BoundInfo:
    return BoundInfo(
        m=m,
        n=n,
        N=N,
        simplex=simplex_bound(m, n, N),
        orthoplex=orthoplex_bound(m, n),
        D=(m - 1) * (m + 2) // 2,
    )


@dataclass
class PackingReport:
    m: int
    n: int
    N: int
    d2_min: Fraction | float
    spectrum: tuple[tuple[Fraction | float, int], ...]
    bounds: BoundInfo
    status: str
    degenerate: bool
    exact: bool
    mode: str
    seed: int | None = None
    samples: int | None = None

    def summary(self) -> str:
        d2 = str(self.d2_min) if self.exact else f"{float(self.d2_min):.12g}"
        parts = [
            f"N={self.N}",
            f"d2={d2}",
            f"simplex={self.bounds.simplex}",
            f"orthoplex={self.bounds.orthoplex}",
            self.status.upper(),
        ]
        if self.degenerate:
            parts.append("DEGENERATE")
        if self.mode == "sampled":
            parts.append(f"sampled({self.samples},seed={self.seed})")
        return " ".join(parts)


def _plane_kind(plane) -> str:
    # GroupPlane is recognized structurally to keep this module independent
    # of the construction layer.
    if isinstance(plane, ExactMatrix):
        return "exact"
    if isinstance(plane, Plane):
        return "exact" if plane.is_exact else "float"
    if hasattr(plane, "subspace") and hasattr(plane, "chi"):
        return "group"
    return "float"


def _pair_d2_exact(pa, ka, pb, kb) -> Fraction:
    from .construct import pair_distance

    if ka == "group" and kb == "group":
        return pair_distance(pa, pb)
    ma = pa.projection() if ka == "group" else (
        pa.exact_projection if isinstance(pa, Plane) else pa
    )
    mb = pb.projection() if kb == "group" else (
        pb.exact_projection if isinstance(pb, Plane) else pb
    )
    n = int(ma.trace())
    return n - ma.trace_product(mb)


def _as_float_basis(plane, kind: str) -> np.ndarray:
    if kind == "group":
        return Plane(exact_projection=plane.projection()).basis_float()
    if isinstance(plane, ExactMatrix):
        return Plane(exact_projection=plane).basis_float()
    if isinstance(plane, Plane):
        return plane.basis_float()
    return Plane.from_basis(np.asarray(plane, dtype=float)).basis_float()


def verify_packing(
    packing,
    mode: str = "exact",
    samples: int = 100_000,
    seed: int = 1,
) -> PackingReport:
    """Pairwise-verify a packing and report the minimal distance, spectrum,
    and bound status.

    mode "exact" checks all pairs in exact arithmetic and requires every
    plane to be exact; "float" checks all pairs in floating point;
    "sampled" draws index pairs from random.Random(seed) (Mersenne
    Twister) and records the seed in the report.
    """
    planes = packing.planes if hasattr(packing, "planes") else list(packing)
    if not planes:
        raise UsageError("packing is empty")
    if hasattr(packing, "m"):
        m, n = packing.m, packing.n
    else:
        first = planes[0]
        kind = _plane_kind(first)
        b = _as_float_basis(first, kind)
        n, m = b.shape
    N = len(planes)
    if N < 2:
        bounds = BoundInfo(m, n, N, Fraction(0), orthoplex_bound(m, n), (m - 1) * (m + 2) // 2)
        return PackingReport(
            m, n, N, Fraction(0), (), bounds, "below-bounds", False, mode == "exact", mode
        )
    kinds = [_plane_kind(p) for p in planes]
    if mode == "exact":
        if any(k == "float" for k in kinds):
            raise UsageError(
                "exact mode needs exact planes; convert explicitly or use float mode"
            )
        pairs = ((a, b) for a in range(N) for b in range(a + 1, N))
        dists: Counter = Counter()
        for a, b in pairs:
            dists[_pair_d2_exact(planes[a], kinds[a], planes[b], kinds[b])] += 1
        exact = True
        used_seed = used_samples = None
    elif mode == "float":
        bases = [_as_float_basis(p, k) for p, k in zip(planes, kinds)]
        dists = Counter()
        for a in range(N):
            ba = bases[a]
            for b in range(a + 1, N):
                cross = ba @ bases[b].T
                d2 = n - float(np.sum(cross * cross))
                dists[round(d2, 12)] += 1
        exact = False
        used_seed = used_samples = None
    elif mode == "sampled":
        rng = random.Random(seed)
        exact = all(k != "float" for k in kinds)
        bases = None if exact else [_as_float_basis(p, k) for p, k in zip(planes, kinds)]
        dists = Counter()
        for _ in range(samples):
            a = rng.randrange(N)
            b = rng.randrange(N - 1)
            if b >= a:
                b += 1
            if exact:
                dists[_pair_d2_exact(planes[a], kinds[a], planes[b], kinds[b])] += 1
            else:
                cross = bases[a] @ bases[b].T
                dists[round(n - float(np.sum(cross * cross)), 12)] += 1
        used_seed, used_samples = seed, samples
    else:
        raise UsageError(f"unknown mode {mode!r}")

    d2_min = min(dists)
    spectrum = tuple(sorted(dists.items()))
    bounds = bound_info(m, n, N)
    degenerate = (d2_min == 0) if exact else isclose(float(d2_min), 0.0, abs_tol=FLOAT_TOL)
    exact_flag = mode == "exact"

    def matches(value, bound: Fraction) -> bool:
        if exact:
            return value == bound
        return abs(float(value) - float(bound)) <= FLOAT_TOL

    if float(d2_min) > float(bounds.simplex) + FLOAT_TOL:
        raise RuntimeError(
            f"computed d2_min {d2_min} exceeds the simplex bound {bounds.simplex}"
        )
    if matches(d2_min, bounds.simplex):
        status = "meets-simplex"
    elif N > bounds.simplex_equality_max_N and matches(d2_min, bounds.orthoplex):
        status = "meets-orthoplex"
    else:
        status = "below-bounds"
    return PackingReport(
        m=m,
        n=n,
        N=N,
        d2_min=d2_min,
        spectrum=spectrum,
        bounds=bounds,
        status=status,
        degenerate=degenerate,
        exact=exact_flag,
        mode=mode,
        seed=used_seed,
        samples=used_samples,
    )
