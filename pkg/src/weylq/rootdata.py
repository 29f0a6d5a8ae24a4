"""Finite-type root data with the node labeling used throughout the package.

Labeling (1-based):

* A, B, C: chain 1-2-...-l.  B has node l short, C has node l long.
* D: chain 1-...-(l-1), node l attached to node l-2.
* E: chain 1-2-3-5-6-...-l, node 4 attached to node 3.
* F4: chain 1-2-3-4, double bond between 2 and 3, nodes 3 and 4 short.
* G2: triple bond, node 2 long.

Cartan entries follow C_ij = 2(a_i, a_j)/(a_i, a_i), so that
d_i C_ij = d_j C_ji with d_i = (a_i, a_i)/2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

FAMILIES = "ABCDEFG"

# C_ij * C_ji  ->  m_ij
_COXETER_TABLE = {0: 2, 1: 3, 2: 4, 3: 6}


class RootDataError(ValueError):
    pass


@dataclass(frozen=True)
class LieType:
    family: str
    rank: int

    def __post_init__(self) -> None:
        fam, l = self.family, self.rank
        if fam not in FAMILIES:
            raise RootDataError(f"unknown family {fam!r}; expected one of {FAMILIES}")
        ok = {
            "A": l >= 1,
            "B": l >= 2,
            "C": l >= 2,
            "D": l >= 4,
            "E": l in (6, 7, 8),
            "F": l == 4,
            "G": l == 2,
        }[fam]
        if not ok:
            constraint = {
                "A": "rank >= 1",
                "B": "rank >= 2",
                "C": "rank >= 2",
                "D": "rank >= 4",
                "E": "rank in {6, 7, 8}",
                "F": "rank == 4",
                "G": "rank == 2",
            }[fam]
            raise RootDataError(f"invalid rank {l} for type {fam}: requires {constraint}")

    @property
    def simply_laced(self) -> bool:
        return self.family in "ADE"

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


@dataclass(frozen=True)
class RootDatum:
    lie_type: LieType
    cartan: tuple[tuple[int, ...], ...]
    d_units: tuple[int, ...]  # e_i = d_i / d
    c: int  # d' / d
    d: Fraction
    d_prime: Fraction
    coxeter: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return self.lie_type.rank

    @property
    def nodes(self) -> range:
        return range(1, self.rank + 1)

    def C(self, i: int, j: int) -> int:
        """Cartan entry with 1-based indices."""
        self._check(i)
        self._check(j)
        return self.cartan[i - 1][j - 1]

    def e(self, i: int) -> int:
        self._check(i)
        return self.d_units[i - 1]

    def d_i(self, i: int) -> Fraction:
        return self.e(i) * self.d

    def _check(self, i: int) -> None:
        if not 1 <= i <= self.rank:
            raise RootDataError(f"node {i} out of range 1..{self.rank} for {self.lie_type}")


def _chain(l: int) -> list[list[int]]:
    C = [[0] * l for _ in range(l)]
    for i in range(l):
        C[i][i] = 2
    for i in range(l - 1):
        C[i][i + 1] = C[i + 1][i] = -1
    return C


def _cartan(fam: str, l: int) -> list[list[int]]:
    if fam == "A":
        return _chain(l)
    if fam == "B":
        C = _chain(l)
        C[l - 1][l - 2] = -2
        return C
    if fam == "C":
        C = _chain(l)
        C[l - 2][l - 1] = -2
        return C
    if fam == "D":
        C = _chain(l - 1) + [[0] * (l - 1)]
        for row in C:
            row.append(0)
        C[l - 1][l - 1] = 2
        C[l - 3][l - 1] = C[l - 1][l - 3] = -1
        return C
    if fam == "E":
        C = [[0] * l for _ in range(l)]
        for i in range(l):
            C[i][i] = 2
        edges = [(1, 2), (2, 3), (3, 4), (3, 5)] + [(k, k + 1) for k in range(5, l)]
        for a, b in edges:
            C[a - 1][b - 1] = C[b - 1][a - 1] = -1
        return C
    if fam == "F":
        C = _chain(4)
        C[2][1] = -2
        return C
    # G2
    return [[2, -3], [-1, 2]]


def _d_units(fam: str, l: int) -> tuple[list[int], Fraction]:
    """Return (e_i, d) from the symmetrizer table."""
    if fam in "ADE":
        return [1] * l, Fraction(1)
    if fam == "B":
        return [2] * (l - 1) + [1], Fraction(1, 2)
    if fam == "C":
        return [1] * (l - 1) + [2], Fraction(1)
    if fam == "F":
        return [2, 2, 1, 1], Fraction(1, 2)
    return [1, 3], Fraction(1)


@lru_cache(maxsize=None)
def build_root_datum(lie_type: LieType) -> RootDatum:
    fam, l = lie_type.family, lie_type.rank
    C = _cartan(fam, l)
    e, d = _d_units(fam, l)
    c = max(e)
    cox = [
        [1 if i == j else _COXETER_TABLE[C[i][j] * C[j][i]] for j in range(l)]
        for i in range(l)
    ]
    return RootDatum(
        lie_type=lie_type,
        cartan=tuple(tuple(r) for r in C),
        d_units=tuple(e),
        c=c,
        d=d,
        d_prime=c * d,
        coxeter=tuple(tuple(r) for r in cox),
    )


def root_datum(family: str, rank: int) -> RootDatum:
    return build_root_datum(LieType(family.upper(), rank))


def coxeter_order(datum: RootDatum, i: int, j: int) -> int:
    datum._check(i)
    datum._check(j)
    return datum.coxeter[i - 1][j - 1]


def neighbors(datum: RootDatum, i: int) -> tuple[list[int], list[int]]:
    """Nodes adjacent to i, split into those below and above i (ascending)."""
    datum._check(i)
    below = [j for j in datum.nodes if j < i and datum.C(i, j) != 0]
    above = [j for j in datum.nodes if j > i and datum.C(i, j) != 0]
    return below, above


def dump(datum: RootDatum) -> str:
    lines = [f"type {datum.lie_type}", "cartan:"]
    lines += ["  " + " ".join(f"{x:3d}" for x in row) for row in datum.cartan]
    lines.append("d_i: " + ", ".join(str(datum.d_i(i)) for i in datum.nodes))
    lines.append(f"d = {datum.d}, d' = {datum.d_prime}, c = {datum.c}")
    lines.append("e_i = d_i/d: " + ", ".join(map(str, datum.d_units)))
    lines.append("m_ij:")
    lines += ["  " + " ".join(f"{x:2d}" for x in row) for row in datum.coxeter]
    return "\n".join(lines)
