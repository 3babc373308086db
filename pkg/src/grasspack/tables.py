"""Parameter table of every packing family the package covers, with
formula-computed N and d^2 and room for per-run verification markers.

Source tags: "1" the full totally-singular-subspace family, "1a" orbit
closures of other coordinate planes, "2a" orthogonal spreads, "2b"
field-spread refinements, "2c" clique searches, "2d"/"2e" external
complex/quaternionic constructions (listed, not implemented), "3" the
quadratic-residue construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .f2 import count_totally_singular


def pow2frac(e: int) -> Fraction:
    return Fraction(1 << e) if e >= 0 else Fraction(1, 1 << -e)


@dataclass
class TableRow:
    m: int
    n: int
    N: int
    d2: Fraction
    source: str
    verified: str = "-"

    def d2_str(self) -> str:
        return (
            str(self.d2.numerator)
            if self.d2.denominator == 1
            else f"{self.d2.numerator}/{self.d2.denominator}"
        )


def f_planes(i: int) -> int:
    """2(2^i - 1)(2^(i-1) + 1): the maximal-subspace family size."""
    return 2 * ((1 << i) - 1) * ((1 << (i - 1)) + 1)


# Orbit-closure rows without a product formula, recorded from full orbit
# enumerations: (i, n) -> N; d^2 is 1/2 for all of them.
RECORDED_ORBITS: dict[tuple[int, int], int] = {
    (4, 3): 151200,
    (4, 7): 64800,
}

# Clique-search rows: (i, d, l, best known clique size).
RECORDED_CLIQUES: list[tuple[int, int, int, int]] = [
    (3, 2, 0, 10),
    (4, 3, 0, 17),
    (4, 3, 1, 130),
]

RESIDUE_PRIMES = [3, 7, 23, 31, 47, 71, 79, 103, 127]


def generate_rows(max_m: int = 128) -> list[TableRow]:
    rows: list[TableRow] = []
    i = 2
    while (1 << i) <= max_m:
        m = 1 << i
        for k in range(i):
            count = (1 << (i - k)) * count_totally_singular(i, k)
            rows.append(TableRow(m, 1 << k, count, pow2frac(k - 1), "1"))
        if i % 2 == 0:
            rows.append(
                TableRow(m, 1, m * ((1 << (i - 1)) + 1), Fraction(m - 1, m), "2a")
            )
            for j in range(2, i):
                if i % j == 0:
                    count = (1 << j) * ((1 << (i - 1)) + 1) * (m - 1) // ((1 << j) - 1)
                    rows.append(
                        TableRow(
                            m,
                            1 << (i - j),
                            count,
                            pow2frac(i - j) - pow2frac(i - 2 * j),
                            "2b",
                        )
                    )
        # Orbit closures beyond the main family.  The table covers i = 3, 4
        # only; i = 4 additionally has two recorded rows with no formula.
        if i in (3, 4):
            count = f_planes(i) * f_planes(i - 1) * f_planes(i - 2) // 3
            rows.append(TableRow(m, 3 << (i - 3), count, pow2frac(i - 4), "1a"))
        if i == 4:
            count = (
                f_planes(i) * f_planes(i - 1) * f_planes(i - 2) * f_planes(i - 3) // 3
            )
            rows.append(TableRow(m, 5 << (i - 4), count, pow2frac(i - 5), "1a"))
        for (oi, on), oN in RECORDED_ORBITS.items():
            if oi == i:
                rows.append(TableRow(m, on, oN, Fraction(1, 2), "1a"))
        for ci, cd, cl, size in RECORDED_CLIQUES:
            if ci == i:
                k = i - cd
                rows.append(
                    TableRow(
                        m,
                        1 << k,
                        (1 << cd) * size,
                        pow2frac(k) - pow2frac(2 * k + cl - i),
                        "2c",
                    )
                )
        # External constructions, listed for completeness.
        rows.append(
            TableRow(
                m,
                2,
                (1 << (i - 1)) * ((1 << (i - 1)) + 1),
                Fraction(2) - pow2frac(2 - i),
                "2d",
                verified="external",
            )
        )
        if i % 2 == 0 and i >= 4:
            rows.append(
                TableRow(
                    m,
                    4,
                    (1 << (i - 1)) * ((1 << (i - 1)) + 1),
                    Fraction(4) - pow2frac(2 - i),
                    "2e",
                    verified="external",
                )
            )
        i += 1
    for p in RESIDUE_PRIMES:
        if p <= max_m:
            rows.append(
                TableRow(
                    p,
                    (p - 1) // 2,
                    p * (p + 1) // 2,
                    Fraction((p + 1) ** 2, 4 * (p + 2)),
                    "3",
                )
            )
    rows.sort(key=lambda r: (r.m, r.n, r.N, r.source))
    return rows
