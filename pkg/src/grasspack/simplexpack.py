"""Equidistant packings of p(p+1)/2 planes in G(p, (p-1)/2) built from
quadratic residues and a normalized Hadamard matrix, for p = 3 or p ≡ -1
(mod 8).  Every pairwise squared distance equals (p+1)^2 / (4(p+2)), which
is the simplex bound, so these packings are optimal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import asin, sqrt

import numpy as np

from .construct import Packing
from .errors import DomainError, UnsupportedConstructionError, UsageError
from .geometry import Plane, principal_angles

FLOAT_TOL = 1e-9


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class ResidueData:
    """Quadratic residues and nonresidues mod p, plus the chosen
    nonresidue multiplier."""

    p: int
    residues: tuple[int, ...]
    nonresidues: tuple[int, ...]
    k: int


def residue_data(p: int, k: int | None = None) -> ResidueData:
    if not _is_prime(p):
        raise DomainError(f"{p} is not prime")
    if p != 3 and p % 8 != 7:
        raise DomainError(f"need p = 3 or p ≡ -1 (mod 8), got {p}")
    residues = tuple(sorted({x * x % p for x in range(1, p)}))
    nonresidues = tuple(x for x in range(1, p) if x not in residues)
    if k is None:
        k = nonresidues[0]
    elif k % p not in nonresidues:
        raise UsageError(f"k={k} is not a nonresidue mod {p}")
    return ResidueData(p, residues, nonresidues, k % p)


def hadamard_constructible(order: int) -> bool:
    if order in (1, 2):
        return True
    if order % 4:
        return False
    if hadamard_constructible(order // 2):
        return True
    return _is_prime(order - 1) and (order - 1) % 4 == 3


def hadamard(order: int) -> np.ndarray:
    """Normalized Hadamard matrix via Sylvester doubling and the
    quadratic-character (skew) construction on order-1 prime ≡ 3 mod 4."""
    if order == 1:
        h = np.array([[1]], dtype=np.int64)
    elif order == 2:
        h = np.array([[1, 1], [1, -1]], dtype=np.int64)
    elif order % 4 == 0 and hadamard_constructible(order // 2):
        half = hadamard(order // 2)
        h = np.block([[half, half], [half, -half]])
    elif order % 4 == 0 and _is_prime(order - 1) and (order - 1) % 4 == 3:
        h = _character_hadamard(order - 1)
    else:
        raise UnsupportedConstructionError(
            f"no implemented Hadamard construction for order {order}"
        )
    h = _normalize_hadamard(h)
    assert np.array_equal(h @ h.T, order * np.eye(order, dtype=np.int64))
    return h


def _character_hadamard(q: int) -> np.ndarray:
    """Order q+1 from the quadratic character chi of Z_q, q ≡ 3 (mod 4):
    H = I + S with S skew, S[0, j] = 1, S[j, 0] = -1, S[a, b] = chi(b-a)."""
    residues = {x * x % q for x in range(1, q)}
    chi = [0] + [1 if x in residues else -1 for x in range(1, q)]
    n = q + 1
    s = np.zeros((n, n), dtype=np.int64)
    s[0, 1:] = 1
    s[1:, 0] = -1
    for a in range(q):
        for b in range(q):
            if a != b:
                s[a + 1, b + 1] = chi[(b - a) % q]
    return s + np.eye(n, dtype=np.int64)


def _normalize_hadamard(h: np.ndarray) -> np.ndarray:
    h = h.copy()
    for r in range(h.shape[0]):
        if h[r, 0] < 0:
            h[r] = -h[r]
    for c in range(h.shape[1]):
        if h[0, c] < 0:
            h[:, c] = -h[:, c]
    return h


def shift_c(p: int) -> float:
    """The irrational weight (1 + sqrt(p+2)) / sqrt(p+1)."""
    return (1 + sqrt(p + 2)) / sqrt(p + 1)


def target_d2(p: int) -> Fraction:
    return Fraction((p + 1) ** 2, 4 * (p + 2))


def theorem3(p: int, k: int | None = None) -> Packing:
    """The p(p+1)/2 planes spanned by e_{q_s} + H[s,t] C e_{k q_s} (rows
    s = 1..(p-1)/2) and all cyclic coordinate shifts of them."""
    data = residue_data(p, k)
    order = (p + 1) // 2
    h = hadamard(order)
    c = shift_c(p)
    nrm = 1.0 / sqrt(1.0 + c * c)
    half = (p - 1) // 2
    planes: list[np.ndarray] = []
    for t in range(order):
        base = np.zeros((half, p))
        for s in range(1, half + 1):
            q_s = data.residues[s - 1]
            base[s - 1, q_s] = nrm
            base[s - 1, data.k * q_s % p] = h[s, t] * c * nrm
        for shift in range(p):
            planes.append(np.roll(base, shift, axis=1))
    return Packing(
        m=p,
        n=half,
        planes=planes,
        provenance=f"theorem3(p={p},k={data.k})",
        claimed_d2=target_d2(p),
        meta={"k": data.k, "hadamard_order": order, "weight": c},
    )


@dataclass
class EquidistanceReport:
    p: int
    N: int
    ok: bool
    d2_target: Fraction
    max_deviation: float
    worst_pair: tuple[int, int] | None
    angles_ok: bool
    meets_simplex: bool

    def summary(self) -> str:
        state = "OK" if self.ok else f"FAIL worst pair {self.worst_pair}"
        return (
            f"N={self.N} d2={self.d2_target} max|dev|={self.max_deviation:.3g} "
            f"angles={'ok' if self.angles_ok else 'FAIL'} "
            f"simplex={'met' if self.meets_simplex else 'NOT MET'} {state}"
        )


def verify_equidistance(packing: Packing, check_angles: bool = True) -> EquidistanceReport:
    """Exhaustively check that all pairwise squared distances equal the
    target, that same-orbit principal angles follow the arcsin pattern,
    and that the simplex bound is met."""
    meta = packing.meta
    p = packing.m
    target = float(target_d2(p))
    bases = [np.asarray(b, dtype=float) for b in packing.planes]
    n = packing.n
    worst = None
    worst_dev = 0.0
    for a in range(len(bases)):
        ba = bases[a]
        for b in range(a + 1, len(bases)):
            cross = ba @ bases[b].T
            d2 = n - float(np.sum(cross * cross))
            dev = abs(d2 - target)
            if dev > worst_dev:
                worst_dev = dev
                worst = (a, b)
    ok = worst_dev <= FLOAT_TOL

    angles_ok = True
    if check_angles:
        c = meta.get("weight", shift_c(p))
        slanted = asin(2 * c / (1 + c * c))
        expected = sorted([0.0] * ((p - 3) // 4) + [slanted] * ((p + 1) // 4))
        for t in range((p + 1) // 2):
            block = packing.planes[t * p : (t + 1) * p]
            pl0 = Plane.from_basis(block[0])
            for shift in range(1, p):
                got = principal_angles(pl0, Plane.from_basis(block[shift]))
                if any(abs(g - e) > FLOAT_TOL for g, e in zip(got, expected)):
                    angles_ok = False
                    break
            if not angles_ok:
                break

    from .geometry import simplex_bound

    meets = abs(target - float(simplex_bound(p, n, packing.N))) <= FLOAT_TOL and ok
    return EquidistanceReport(
        p=p,
        N=packing.N,
        ok=ok and angles_ok and meets,
        d2_target=target_d2(p),
        max_deviation=worst_dev,
        worst_pair=worst,
        angles_ok=angles_ok,
        meets_simplex=meets,
    )
