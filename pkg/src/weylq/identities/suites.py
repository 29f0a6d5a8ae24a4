"""Named suites: every applicable instance of a family of checks for one type."""

from __future__ import annotations

from typing import Callable, Iterable, Optional

from ..ymring import Context, Mode, N_set, sigma_range
from . import checks
from .builders import top_index
from .report import EqConfig, Report

# suites about the action itself run in full mode unless told otherwise;
# the identities among named elements default to free F-coefficients
DEFAULT_MODE = {
    "involution": Mode.FULL,
    "braid": Mode.FULL,
    "z-invariance": Mode.FULL,
    "subreflection": Mode.FULL,
    "c-factorization": Mode.ABSTRACT_F,
    "a-closed-form": Mode.ABSTRACT_F,
    "delta": Mode.ABSTRACT_F,
    "combinatorics": Mode.ABSTRACT_F,
    "p-transform": Mode.ABSTRACT_F,
}

SUITES = tuple(DEFAULT_MODE)


def _nodes_s(ctx: Context):
    for i in ctx.datum.nodes:
        for s in sigma_range(ctx, i):
            yield i, s


def suite_involution(ctx: Context, eq: EqConfig) -> list[Report]:
    return [r for i in ctx.datum.nodes for r in checks.verify_involution(ctx, i, eq)]


def suite_braid(ctx: Context, eq: EqConfig) -> list[Report]:
    out = []
    for i in ctx.datum.nodes:
        for j in ctx.datum.nodes:
            if j > i:
                out += checks.verify_braid(ctx, i, j, eq)
    return out


def suite_z_invariance(ctx: Context, eq: EqConfig) -> list[Report]:
    out = []
    for i in ctx.datum.nodes:
        out += checks.verify_z_invariance(ctx, i, eq)
        out += checks.verify_F_fixing(ctx, i, eq)
    return out


def suite_subreflection(ctx: Context, eq: EqConfig) -> list[Report]:
    out = []
    for i, s in _nodes_s(ctx):
        out += checks.verify_subreflection_involution(ctx, i, s, eq)
        out += checks.verify_PX_fixed(ctx, i, s, eq)
        for s2 in sigma_range(ctx, i):
            if s2 > s:
                out += checks.verify_subreflection_commute(ctx, i, s, s2, eq)
            if s2 != s:
                out += checks.verify_cross_delta_fixing(ctx, i, s, s2, eq)
    for i in ctx.datum.nodes:
        out += checks.verify_product_decomposition(ctx, i, eq)
    return out


def suite_c_factorization(ctx: Context, eq: EqConfig, kmax: int = 6) -> list[Report]:
    out = []
    for i, s in _nodes_s(ctx):
        for k in range(2, kmax + 1):
            out += checks.verify_C_factorization(ctx, i, s, k, eq)
    return out


def suite_a_closed_form(ctx: Context, eq: EqConfig) -> list[Report]:
    return [r for i, s in _nodes_s(ctx) for r in checks.verify_A_closed_form(ctx, i, s, eq)]


def suite_delta(ctx: Context, eq: EqConfig) -> list[Report]:
    out = []
    for i, s in _nodes_s(ctx):
        out += checks.verify_delta_formula(ctx, i, s, eq)
        out += checks.verify_delta_squared(ctx, i, s, eq)
        out += checks.verify_delta_tau_invariance(ctx, i, s, eq)
    return out


def suite_combinatorics(ctx: Context, eq: EqConfig, kmax: int = 8) -> list[Report]:
    out = checks.verify_subset_counts()
    for i, s in _nodes_s(ctx):
        for k in range(2, kmax + 1):
            out += checks.verify_C_subset_expansion(ctx, i, s, k, eq)
        out += checks.verify_A_cyclic_expansion(ctx, i, s, eq)
    return out


def suite_p_transform(ctx: Context, eq: EqConfig) -> list[Report]:
    out = []
    for i, s in _nodes_s(ctx):
        K = top_index(ctx, i)
        for t in N_set(ctx, i, s):
            out += checks.verify_P_transform(ctx, i, s, t, eq)
        out += checks.verify_telescoping(ctx, i, s, eq)
        for n in range(K):
            out += checks.verify_r_on_X(ctx, i, s, n, eq)
            out += checks.verify_D_top(ctx, i, s, n, eq)
            for k in range(2, K):
                out += checks.verify_D_recursion(ctx, i, s, n, k, eq)
            for k in range(2, K + 1):
                out += checks.verify_r_on_D(ctx, i, s, n, k, eq)
    return out


RUNNERS: dict[str, Callable[[Context, EqConfig], list[Report]]] = {
    "involution": suite_involution,
    "braid": suite_braid,
    "z-invariance": suite_z_invariance,
    "subreflection": suite_subreflection,
    "c-factorization": suite_c_factorization,
    "a-closed-form": suite_a_closed_form,
    "delta": suite_delta,
    "combinatorics": suite_combinatorics,
    "p-transform": suite_p_transform,
}


def expand_suites(names: Iterable[str]) -> list[str]:
    """Resolve ``all`` and validate; order follows SUITES, duplicates removed."""
    chosen: set[str] = set()
    for name in names:
        name = name.strip()
        if not name:
            continue
        if name == "all":
            chosen.update(SUITES)
        elif name in RUNNERS:
            chosen.add(name)
        else:
            raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}, all")
    if not chosen:
        raise ValueError("empty suite selection")
    return [s for s in SUITES if s in chosen]


def run_suites(
    ctx: Context, names: Iterable[str], eq: EqConfig, mode: Optional[Mode] = None
) -> list[Report]:
    """Run the suites; ``mode`` overrides each suite's default mode."""
    out: list[Report] = []
    for name in expand_suites(names):
        sctx = ctx.with_mode(mode if mode is not None else DEFAULT_MODE[name])
        out += RUNNERS[name](sctx, eq)
    return out
