"""The recurrences C~(k), A~(k) and their images in the periodic ring."""

from __future__ import annotations

from functools import lru_cache

from ..exactalg import RatFunc
from ..ymring import Context, Dtilde_elem, F_elem, check_s, project_pi, tau_shift, ztilde_elem


def needed_window(ctx: Context, i: int, s: int, k: int) -> tuple[int, int]:
    """Smallest window holding every yt that C~(k) and A~(k) touch."""
    e = ctx.datum.e(i)
    return e + s - 1, (k + 1) * e + s - 1


def windowed(ctx: Context, i: int, s: int, k: int) -> Context:
    """ctx with a window wide enough for C~(k), A~(k) (kept if already wider)."""
    lo, hi = needed_window(ctx, i, s, k)
    if ctx.window is not None:
        lo, hi = min(lo, ctx.window[0]), max(hi, ctx.window[1])
    return ctx.with_window(lo, hi)


@lru_cache(maxsize=None)
def C_tilde(ctx: Context, i: int, s: int, k: int) -> RatFunc:
    if k < 1:
        raise ValueError(f"C~ needs k >= 1, got {k}")
    check_s(ctx, i, s)
    e = ctx.datum.e(i)
    if k == 1:
        return RatFunc(1)
    if k == 2:
        return ztilde_elem(ctx, i, 2 * e + s - 1)
    return (
        ztilde_elem(ctx, i, k * e + s - 1) * C_tilde(ctx, i, s, k - 1)
        - F_elem(ctx, i, (k - 1) * e + s - 1) * C_tilde(ctx, i, s, k - 2)
    )


@lru_cache(maxsize=None)
def A_tilde(ctx: Context, i: int, s: int, k: int) -> RatFunc:
    if k < 2:
        raise ValueError(f"A~ needs k >= 2, got {k}")
    e = ctx.datum.e(i)
    tail = F_elem(ctx, i, k * e + s - 1) * C_tilde(ctx, i, s, k - 1)
    return ztilde_elem(ctx, i, e + s - 1) * C_tilde(ctx, i, s, k) - tail - tau_shift(ctx, tail, e)


def C_elem(ctx: Context, i: int, s: int, k: int) -> RatFunc:
    """C(k) = pi(C~(k)); the window is widened as needed."""
    w = windowed(ctx, i, s, k)
    return project_pi(w, C_tilde(w, i, s, k))


def A_elem(ctx: Context, i: int, s: int, k: int) -> RatFunc:
    """A(k) = pi(A~(k)); the window is widened as needed."""
    w = windowed(ctx, i, s, k)
    return project_pi(w, A_tilde(w, i, s, k))


def D_elem(ctx: Context, i: int, n: int, k: int) -> RatFunc:
    """D_n(k) = pi(D~_n(k)) for a time index n in d-units."""
    e = ctx.datum.e(i)
    w = ctx.with_window(n - (k - 2) * e, n + e)
    return project_pi(w, Dtilde_elem(w, i, n, k))


def top_index(ctx: Context, i: int) -> int:
    """K = cm / e_i, asserted integral."""
    cm, e = ctx.cm, ctx.datum.e(i)
    if cm % e:
        raise ArithmeticError(f"cm={cm} is not divisible by e_{i}={e}")
    return cm // e
