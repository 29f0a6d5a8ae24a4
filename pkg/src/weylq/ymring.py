"""Named elements of the periodic ring Y_m and of a truncated infinite ring.

Time indices are integers in units of d.  Periodic generators ``y[i,t]`` and
``f[i,t]`` have t reduced mod cm; infinite-ring generators ``yt[i,n]`` keep n
unreduced but must lie in the window declared on the :class:`Context`.

In ``full`` mode F_i(t) is the neighbour product of y's; in ``abstract-f``
mode it is the free generator ``f[i,t]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional

from .exactalg import LaurentPoly, RatFunc, substitute
from .exactalg.ratfunc import rename
from .rootdata import RootDataError, RootDatum, neighbors
from .varid import Role, VarId, f, y, yt


class Mode(str, Enum):
    FULL = "full"
    ABSTRACT_F = "abstract-f"


class WindowError(ValueError):
    """An infinite-ring index fell outside the declared window."""


@dataclass(frozen=True)
class Context:
    datum: RootDatum
    m: int
    mode: Mode = Mode.FULL
    window: Optional[tuple[int, int]] = None

    def __post_init__(self) -> None:
        if self.m <= 1:
            raise ValueError(f"m must exceed 1, got {self.m}")
        if self.window is not None:
            lo, hi = self.window
            if lo > hi:
                raise ValueError(f"empty window [{lo}, {hi}]")
        object.__setattr__(self, "mode", Mode(self.mode))

    @property
    def cm(self) -> int:
        return self.datum.c * self.m

    @property
    def rank(self) -> int:
        return self.datum.rank

    @property
    def grid_size(self) -> int:
        return self.cm * self.rank

    def with_window(self, lo: int, hi: int) -> Context:
        return replace(self, window=(lo, hi))

    def with_mode(self, mode: Mode | str) -> Context:
        return replace(self, mode=Mode(mode))

    def y_var(self, i: int, t: int) -> VarId:
        self.datum._check(i)
        return y(i, t % self.cm)

    def yt_var(self, i: int, n: int) -> VarId:
        self.datum._check(i)
        if self.window is None:
            raise WindowError("context has no window for infinite-ring generators")
        lo, hi = self.window
        if not lo <= n <= hi:
            raise WindowError(f"yt[{i},{n}] outside window [{lo}, {hi}]")
        return yt(i, n)

    def generators(self) -> list[VarId]:
        """All periodic y-generators, node-major."""
        return [y(i, t) for i in self.datum.nodes for t in range(self.cm)]

    def describe(self) -> dict:
        out = {"type": str(self.datum.lie_type), "m": self.m, "mode": self.mode.value}
        if self.window is not None:
            out["window"] = list(self.window)
        return out


def make_context(family: str, rank: int, m: int, mode: Mode | str = Mode.FULL, window=None) -> Context:
    from .rootdata import root_datum

    return Context(root_datum(family, rank), m, Mode(mode), tuple(window) if window else None)


# -- F, X, P, z -----------------------------------------------------------


def F_factors(datum: RootDatum, i: int) -> list[tuple[int, int]]:
    """The (node, time offset) pairs whose y's multiply to F_i(t)."""
    datum._check(i)
    fam, l = datum.lie_type.family, datum.rank
    special_short = (fam == "B" and i == l) or (fam == "F" and i == 3)
    special_long = (fam == "B" and i == l - 1) or (fam == "F" and i == 2)
    if special_short:
        pairs = [(i - 1, 1), (i + 1, 0)]
    elif special_long:
        pairs = [(i - 1, 2), (i + 1, 0), (i + 1, 1)]
    elif fam == "C" and i == l:
        pairs = [(l - 1, 1), (l - 1, 2)]
    elif fam == "G" and i == 2:
        pairs = [(1, 1), (1, 2), (1, 3)]
    else:
        below, above = neighbors(datum, i)
        pairs = [(j, datum.e(j)) for j in below] + [(j, 0) for j in above]
    # factors whose node lies outside I are absent
    return [(j, a) for j, a in pairs if 1 <= j <= l]


def F_formula(datum: RootDatum, i: int) -> str:
    parts = []
    for j, a in F_factors(datum, i):
        parts.append(f"y[{j},t+{a}]" if a else f"y[{j},t]")
    return "*".join(parts) if parts else "1"


@lru_cache(maxsize=None)
def F_elem(ctx: Context, i: int, t: int) -> RatFunc:
    if ctx.mode is Mode.ABSTRACT_F:
        ctx.datum._check(i)
        return RatFunc.var(f(i, t % ctx.cm))
    return F_full(ctx, i, t)


@lru_cache(maxsize=None)
def F_full(ctx: Context, i: int, t: int) -> RatFunc:
    mono: dict[VarId, int] = {}
    for j, a in F_factors(ctx.datum, i):
        v = ctx.y_var(j, t + a)
        mono[v] = mono.get(v, 0) + 1
    return RatFunc(LaurentPoly.monomial(tuple(sorted(mono.items()))))


def Y(ctx: Context, i: int, t: int) -> RatFunc:
    return RatFunc.var(ctx.y_var(i, t))


@lru_cache(maxsize=None)
def X_elem(ctx: Context, i: int, t: int) -> RatFunc:
    e = ctx.datum.e(i)
    return F_elem(ctx, i, t) / (Y(ctx, i, t) * Y(ctx, i, t + e))


@lru_cache(maxsize=None)
def P_elem(ctx: Context, i: int, t: int) -> RatFunc:
    e = ctx.datum.e(i)
    K = ctx.cm // e - 2
    total = RatFunc(1)
    prod = RatFunc(1)
    for k in range(K + 1):
        prod = prod * X_elem(ctx, i, t - k * e)
        total = total + prod
    return total


@lru_cache(maxsize=None)
def z_elem(ctx: Context, i: int, t: int) -> RatFunc:
    e = ctx.datum.e(i)
    return Y(ctx, i, t) + F_elem(ctx, i, t) / Y(ctx, i, t + e)


# -- residue classes and the bold elements -------------------------------------


@dataclass(frozen=True)
class SubIndexSet:
    node: int
    s: int
    members: tuple[int, ...] = field(default=())

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, t: object) -> bool:
        return t in self.members


def sigma_range(ctx: Context, i: int) -> range:
    return range(1, ctx.datum.e(i) + 1)


def check_s(ctx: Context, i: int, s: int) -> None:
    if s not in sigma_range(ctx, i):
        raise RootDataError(f"s={s} out of range 1..{ctx.datum.e(i)} for node {i}")


def N_set(ctx: Context, i: int, s: int) -> SubIndexSet:
    check_s(ctx, i, s)
    e = ctx.datum.e(i)
    return SubIndexSet(i, s, tuple(t for t in range(ctx.cm) if t % e == s - 1))


def s_of(ctx: Context, i: int, t: int) -> int:
    """The s with t in N_{i,s}."""
    return (t % ctx.cm) % ctx.datum.e(i) + 1


def bold_y(ctx: Context, i: int, s: int) -> RatFunc:
    out = RatFunc(1)
    for t in N_set(ctx, i, s):
        out = out * Y(ctx, i, t)
    return out


def bold_F(ctx: Context, i: int, s: int) -> RatFunc:
    out = RatFunc(1)
    for t in N_set(ctx, i, s):
        out = out * F_elem(ctx, i, t)
    return out


def delta_elem(ctx: Context, i: int, s: int) -> RatFunc:
    yb = bold_y(ctx, i, s)
    return yb - bold_F(ctx, i, s) / yb


# -- shift and projection ----------------------------------------------------


def _shifter(ctx: Context, steps: int) -> Callable[[VarId], VarId]:
    cm = ctx.cm

    def move(v: VarId) -> VarId:
        if v.role is Role.YTILDE:
            return ctx.yt_var(v.node, v.time + steps)
        return VarId(v.role, v.node, (v.time + steps) % cm)

    return move


def tau_shift(ctx: Context, a: RatFunc, steps: int = 1) -> RatFunc:
    """tau^steps: every generator's time index moves by ``steps`` d-units."""
    if steps == 0:
        return a
    return rename(a, _shifter(ctx, steps), injective=True)


def project_pi(ctx: Context, a: RatFunc) -> RatFunc:
    """pi: yt[i,n] -> y[i, n mod cm]; periodic generators are untouched."""
    cm = ctx.cm

    def down(v: VarId) -> VarId:
        if v.role is Role.YTILDE:
            return y(v.node, v.time % cm)
        return v

    return rename(a, down, injective=False)


# -- infinite ring --------------------------------------------------------------


def YT(ctx: Context, i: int, n: int) -> RatFunc:
    return RatFunc.var(ctx.yt_var(i, n))


@lru_cache(maxsize=None)
def ztilde_elem(ctx: Context, i: int, n: int) -> RatFunc:
    e = ctx.datum.e(i)
    return YT(ctx, i, n) + F_elem(ctx, i, n) / YT(ctx, i, n + e)


@lru_cache(maxsize=None)
def Xtilde_elem(ctx: Context, i: int, n: int) -> RatFunc:
    e = ctx.datum.e(i)
    return F_elem(ctx, i, n) / (YT(ctx, i, n) * YT(ctx, i, n + e))


@lru_cache(maxsize=None)
def Dtilde_elem(ctx: Context, i: int, n: int, k: int) -> RatFunc:
    if k < 2:
        raise ValueError(f"D~ needs k >= 2, got {k}")
    e = ctx.datum.e(i)
    total = RatFunc(1)
    prod = RatFunc(1)
    for p in range(k - 1):
        prod = prod * Xtilde_elem(ctx, i, n - p * e)
        total = total + prod
    return total


# -- mode bridge and independence smoke test ------------------------------------


def full_F_images(ctx: Context, variables) -> dict[VarId, RatFunc]:
    """Images f[i,t] -> F_i(t) (full mode) for the f-generators among ``variables``."""
    full = ctx.with_mode(Mode.FULL)
    return {v: F_full(full, v.node, v.time) for v in variables if v.role is Role.F}


def specialize_full(ctx: Context, a: RatFunc) -> RatFunc:
    return substitute(a, full_F_images(ctx, a.variables()))


def jacobian_rank(ctx: Context, i: int, lo: int, size: int, point_seed: int = 0) -> tuple[int, int]:
    """Rank of d(zt_i(n))/d(yt_i(n')) at a random rational point.

    Rows are the zt_i(n) whose two yt's both lie in [lo, lo + size - 1];
    columns are the yt's in that window with stride e_i starting at lo.
    Returns (rank, number of rows).
    """
    import random

    e = ctx.datum.e(i)
    hi = lo + size - 1
    wctx = ctx.with_window(lo, hi)
    cols = [yt(i, n) for n in range(lo, hi + 1, e)]
    rows = [ztilde_elem(wctx, i, n) for n in range(lo, hi - e + 1, e)]
    rng = random.Random(point_seed)
    point: dict[VarId, Fraction] = {}
    for r in rows:
        for v in r.variables():
            point.setdefault(v, Fraction(rng.randint(1, 97), rng.randint(1, 97)))
    mat = [[derivative_at(r, v, point) for v in cols] for r in rows]
    return _rank(mat), len(rows)


def derivative_at(a: RatFunc, v: VarId, point) -> Fraction:
    num, den = a.num, a.den
    dn, dd = num.diff(v), den.diff(v)
    N = num.evaluate(point)
    D = den.evaluate(point)
    if D == 0:
        raise ZeroDivisionError("singular evaluation point")
    dN = dn.evaluate(point) if not dn.is_zero() else Fraction(0)
    dD = dd.evaluate(point) if not dd.is_zero() else Fraction(0)
    return (dN * D - N * dD) / (D * D)


def _rank(mat: list[list[Fraction]]) -> int:
    rows = [list(r) for r in mat]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                q = rows[r][col] / rows[rank][col]
                rows[r] = [a - q * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank
