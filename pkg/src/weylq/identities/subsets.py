"""Non-adjacent subset families on a path and on a cycle, and the sums over them."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations

from ..exactalg import RatFunc
from ..ymring import Context, F_elem, z_elem, ztilde_elem


class Kind(str, Enum):
    PATH = "path"
    CYCLE = "cycle"


@dataclass(frozen=True)
class SubsetFamily:
    """Size-p subsets with no two consecutive elements.

    PATH: subsets of {2, ..., k-1}; complement taken in {2, ..., k}.
    CYCLE: subsets of Z/n (n = size), consecutive read cyclically.
    """

    kind: Kind
    size: int  # k for PATH, m for CYCLE
    p: int

    def __post_init__(self) -> None:
        limit = (self.size - 1) // 2 if self.kind is Kind.PATH else self.size // 2
        if not 0 <= self.p <= limit:
            raise ValueError(f"p={self.p} out of range 0..{limit} for {self.kind.value} of size {self.size}")

    def ground(self) -> list[int]:
        if self.kind is Kind.PATH:
            return list(range(2, self.size))
        return list(range(self.size))

    def admissible(self, sigma: tuple[int, ...]) -> bool:
        members = set(sigma)
        for j in sigma:
            nxt = j + 1 if self.kind is Kind.PATH else (j + 1) % self.size
            # a singleton is never adjacent to itself, also when size == 2
            if nxt in members and nxt != j:
                return False
        return True

    def members(self) -> list[tuple[int, ...]]:
        """Brute force: all p-subsets of the ground set, filtered."""
        return [s for s in combinations(self.ground(), self.p) if self.admissible(s)]

    def complement(self, sigma: tuple[int, ...]) -> list[int]:
        members = set(sigma)
        if self.kind is Kind.PATH:
            return [j for j in range(2, self.size + 1) if j not in members and j - 1 not in members]
        n = self.size
        return [j for j in range(n) if j not in members and (j - 1) % n not in members]

    def __len__(self) -> int:
        return len(self.members())


def _index(ctx: Context, i: int, s: int, j: int) -> int:
    return j * ctx.datum.e(i) + s - 1


def M_poly(ctx: Context, i: int, k: int, p: int, s: int = 1) -> RatFunc:
    """Sum over the path family of prod F_i(j) * prod zt_i(j'), in the window of ctx.

    Index j stands for the time j*e_i + s - 1, which is j itself when e_i = 1, s = 1.
    """
    fam = SubsetFamily(Kind.PATH, k, p)
    total = RatFunc(0)
    for sigma in fam.members():
        term = RatFunc(1)
        for j in sigma:
            term = term * F_elem(ctx, i, _index(ctx, i, s, j))
        for j in fam.complement(sigma):
            term = term * ztilde_elem(ctx, i, _index(ctx, i, s, j))
        total = total + term
    return total


def T_poly(ctx: Context, i: int, m: int, p: int, s: int = 1) -> RatFunc:
    """Sum over the cycle family on Z/m of prod F_i(j) * prod z_i(j') (periodic ring)."""
    fam = SubsetFamily(Kind.CYCLE, m, p)
    total = RatFunc(0)
    for sigma in fam.members():
        term = RatFunc(1)
        for j in sigma:
            term = term * F_elem(ctx, i, _index(ctx, i, s, j))
        for j in fam.complement(sigma):
            term = term * z_elem(ctx, i, _index(ctx, i, s, j))
        total = total + term
    return total
