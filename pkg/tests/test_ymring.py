from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracle import grid_A, grid_B2, grid_G2, identical, to_sympy
from weylq.exactalg import RatFunc, equals
from weylq.rootdata import RootDataError, root_datum
from weylq.varid import f, y, yt
from weylq.ymring import (
    Context,
    Dtilde_elem,
    F_elem,
    F_formula,
    Mode,
    N_set,
    P_elem,
    WindowError,
    X_elem,
    Xtilde_elem,
    Y,
    YT,
    bold_F,
    bold_y,
    delta_elem,
    jacobian_rank,
    make_context,
    project_pi,
    s_of,
    sigma_range,
    specialize_full,
    tau_shift,
    z_elem,
    ztilde_elem,
)

SMALL_TYPES = [("A", 1), ("A", 2), ("A", 3), ("A", 4), ("B", 2), ("B", 3), ("B", 4), ("C", 2), ("C", 3),
               ("C", 4), ("D", 4), ("F", 4), ("G", 2)]


def v(i, t):
    return RatFunc.var(y(i, t))


# -- Context --------------------------------------------------------------------------------


def test_context_validation():
    with pytest.raises(ValueError):
        make_context("A", 1, 1)
    with pytest.raises(ValueError):
        make_context("A", 1, 2, window=(3, 2))
    with pytest.raises(RootDataError):
        make_context("D", 3, 2)


@pytest.mark.parametrize("family,rank", SMALL_TYPES)
def test_grid_size(family, rank):
    for m in (2, 3):
        ctx = make_context(family, rank, m)
        assert len(ctx.generators()) == ctx.grid_size == ctx.datum.c * m * rank
        assert len(set(ctx.generators())) == ctx.grid_size


def test_periodic_indices_reduce():
    ctx = make_context("B", 2, 2)
    assert ctx.y_var(1, 5) == y(1, 1)
    assert ctx.y_var(2, -1) == y(2, 3)


# -- F --------------------------------------------------------------------------------------


def test_F_examples():
    assert F_elem(make_context("A", 1, 2), 1, 0) == 1
    a2 = make_context("A", 2, 2)
    assert F_elem(a2, 1, 1) == v(2, 1)
    assert F_elem(a2, 2, 1) == v(1, 0)  # t + 1 wraps mod 2
    b2 = make_context("B", 2, 2)
    assert F_elem(b2, 2, 1) == v(1, 2)
    assert F_elem(b2, 1, 3) == v(2, 3) * v(2, 0)


def test_F_formulas():
    assert F_formula(root_datum("B", 2), 2) == "y[1,t+1]"
    assert F_formula(root_datum("B", 2), 1) == "y[2,t]*y[2,t+1]"
    assert F_formula(root_datum("B", 3), 2) == "y[1,t+2]*y[3,t]*y[3,t+1]"
    assert F_formula(root_datum("B", 3), 3) == "y[2,t+1]"
    assert F_formula(root_datum("C", 3), 3) == "y[2,t+1]*y[2,t+2]"
    assert F_formula(root_datum("C", 3), 2) == "y[1,t+1]*y[3,t]"
    assert F_formula(root_datum("G", 2), 2) == "y[1,t+1]*y[1,t+2]*y[1,t+3]"
    assert F_formula(root_datum("G", 2), 1) == "y[2,t]"
    assert F_formula(root_datum("F", 4), 2) == "y[1,t+2]*y[3,t]*y[3,t+1]"
    assert F_formula(root_datum("F", 4), 3) == "y[2,t+1]*y[4,t]"
    assert F_formula(root_datum("A", 1), 1) == "1"


@pytest.mark.parametrize("family,rank", SMALL_TYPES)
def test_F_exponents_respect_symmetrization(family, rank):
    """Each neighbor j contributes -C_ji factors to F_i: y_j occurs as often as alpha_j in s_i."""
    datum = root_datum(family, rank)
    from weylq.ymring import F_factors

    for i in datum.nodes:
        counts = {}
        for j, _ in F_factors(datum, i):
            counts[j] = counts.get(j, 0) + 1
        for j in datum.nodes:
            if j != i:
                assert counts.get(j, 0) == -datum.C(j, i)


def test_abstract_F_is_free_variable():
    ctx = make_context("B", 2, 2, Mode.ABSTRACT_F)
    assert F_elem(ctx, 1, 6) == RatFunc.var(f(1, 2))
    assert X_elem(ctx, 1, 0) == RatFunc.var(f(1, 0)) / (v(1, 0) * v(1, 2))


# -- X, P, z against the sympy oracle ----------------------------------------------------


@pytest.mark.parametrize(
    "ctx,grid",
    [
        (make_context("A", 1, 3), grid_A(1, 3)),
        (make_context("A", 2, 2), grid_A(2, 2)),
        (make_context("A", 3, 2), grid_A(3, 2)),
        (make_context("B", 2, 2), grid_B2(2)),
        (make_context("G", 2, 2), grid_G2(2)),
    ],
)
def test_named_elements_match_oracle(ctx, grid):
    for i in ctx.datum.nodes:
        for t in range(ctx.cm):
            assert identical(to_sympy(F_elem(ctx, i, t)), grid.F(i, t))
            assert identical(to_sympy(X_elem(ctx, i, t)), grid.X(i, t))
            assert identical(to_sympy(P_elem(ctx, i, t)), grid.P(i, t))
            assert identical(to_sympy(z_elem(ctx, i, t)), grid.z(i, t))


def test_X_and_P_examples():
    a12 = make_context("A", 1, 2)
    assert X_elem(a12, 1, 0) == 1 / (v(1, 0) * v(1, 1)) == X_elem(a12, 1, 1)
    assert P_elem(a12, 1, 0) == 1 + 1 / (v(1, 0) * v(1, 1))
    a13 = make_context("A", 1, 3)
    assert P_elem(a13, 1, 0) == 1 + X_elem(a13, 1, 0) + X_elem(a13, 1, 0) * X_elem(a13, 1, 2)
    g2 = make_context("G", 2, 2)
    assert P_elem(g2, 2, 1) == 1 + X_elem(g2, 2, 1)


def test_z_examples():
    assert z_elem(make_context("A", 1, 2), 1, 0) == v(1, 0) + 1 / v(1, 1)
    assert z_elem(make_context("A", 2, 2), 1, 0) == v(1, 0) + v(2, 0) / v(1, 1)


@pytest.mark.parametrize("family,rank", SMALL_TYPES)
@pytest.mark.parametrize("mode", list(Mode))
def test_z_product_form(family, rank, mode):
    for m in (2, 3):
        ctx = make_context(family, rank, m, mode)
        for i in ctx.datum.nodes:
            for t in range(ctx.cm):
                assert equals(z_elem(ctx, i, t), Y(ctx, i, t) * (1 + X_elem(ctx, i, t)))


@pytest.mark.parametrize("family,rank", [("A", 2), ("B", 2), ("C", 3), ("G", 2)])
def test_periodicity(family, rank):
    ctx = make_context(family, rank, 2)
    for i in ctx.datum.nodes:
        for t in range(ctx.cm):
            for build in (F_elem, X_elem, P_elem, z_elem):
                assert build(ctx, i, t) == build(ctx, i, t + ctx.cm) == build(ctx, i, t - ctx.cm)


@pytest.mark.parametrize("family,rank", [("A", 1), ("A", 2), ("B", 2), ("C", 2), ("G", 2)])
def test_abstract_full_compatibility(family, rank):
    ab = make_context(family, rank, 2, Mode.ABSTRACT_F)
    full = ab.with_mode(Mode.FULL)
    for i in ab.datum.nodes:
        for s in sigma_range(ab, i):
            assert specialize_full(ab, delta_elem(ab, i, s)) == delta_elem(full, i, s)
        for t in range(ab.cm):
            for build in (X_elem, P_elem, z_elem):
                assert specialize_full(ab, build(ab, i, t)) == build(full, i, t)


@pytest.mark.parametrize("family,rank", [("A", 1), ("A", 2), ("B", 2), ("C", 2), ("G", 2)])
def test_telescoping_constant_on_classes(family, rank):
    ctx = make_context(family, rank, 3, Mode.ABSTRACT_F)
    for i in ctx.datum.nodes:
        e = ctx.datum.e(i)
        for s in sigma_range(ctx, i):
            prod = RatFunc(1)
            for k in N_set(ctx, i, s):
                prod = prod * X_elem(ctx, i, k)
            for t in N_set(ctx, i, s):
                lhs = X_elem(ctx, i, t) * P_elem(ctx, i, t - e) - P_elem(ctx, i, t)
                assert lhs == prod - 1


# -- sub-index sets and bold elements ----------------------------------------------------


def test_N_sets_b2():
    ctx = make_context("B", 2, 2)
    assert tuple(N_set(ctx, 1, 1)) == (0, 2)
    assert tuple(N_set(ctx, 1, 2)) == (1, 3)
    assert tuple(N_set(ctx, 2, 1)) == (0, 1, 2, 3)
    with pytest.raises(RootDataError):
        N_set(ctx, 2, 2)


@pytest.mark.parametrize("family,rank", SMALL_TYPES)
def test_N_sets_partition_the_grid(family, rank):
    ctx = make_context(family, rank, 3)
    for i in ctx.datum.nodes:
        seen = []
        for s in sigma_range(ctx, i):
            members = list(N_set(ctx, i, s))
            assert len(members) == ctx.cm // ctx.datum.e(i)
            assert all(s_of(ctx, i, t) == s for t in members)
            seen += members
        assert sorted(seen) == list(range(ctx.cm))
        if ctx.datum.lie_type.simply_laced:
            assert list(sigma_range(ctx, i)) == [1]


def test_bold_elements_a1():
    ctx = make_context("A", 1, 2)
    assert bold_y(ctx, 1, 1) == v(1, 0) * v(1, 1)
    assert bold_F(ctx, 1, 1) == 1
    assert delta_elem(ctx, 1, 1) == v(1, 0) * v(1, 1) - 1 / (v(1, 0) * v(1, 1))


# -- shift and projection -------------------------------------------------------------------


def test_tau_examples():
    ctx = make_context("A", 1, 2)
    assert tau_shift(ctx, z_elem(ctx, 1, 0)) == z_elem(ctx, 1, 1)
    b2 = make_context("B", 2, 2)
    assert tau_shift(b2, delta_elem(b2, 1, 1)) == delta_elem(b2, 1, 2)
    assert tau_shift(b2, delta_elem(b2, 1, 2)) == delta_elem(b2, 1, 1)
    g2 = make_context("G", 2, 2, Mode.ABSTRACT_F)
    for s in (1, 2, 3):
        assert tau_shift(g2, delta_elem(g2, 2, s)) == delta_elem(g2, 2, s % 3 + 1)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 5), st.integers(-7, 7), st.sampled_from([("A", 2), ("B", 2), ("G", 2)]))
def test_tau_full_period_and_composition(t, steps, typ):
    ctx = make_context(*typ, 2, Mode.ABSTRACT_F)
    a = P_elem(ctx, 1, t) + z_elem(ctx, ctx.rank, t + 1)
    assert tau_shift(ctx, tau_shift(ctx, a, 1), ctx.cm - 1) == a
    assert tau_shift(ctx, tau_shift(ctx, a, steps), -steps) == a
    assert tau_shift(ctx, P_elem(ctx, 1, t), steps) == P_elem(ctx, 1, t + steps)


def test_window_enforced():
    ctx = make_context("A", 1, 2, window=(0, 4))
    with pytest.raises(WindowError):
        YT(ctx, 1, 5)
    with pytest.raises(WindowError):
        ztilde_elem(ctx, 1, 4)
    with pytest.raises(WindowError):
        tau_shift(ctx, YT(ctx, 1, 4), 1)
    with pytest.raises(WindowError):
        YT(make_context("A", 1, 2), 1, 0)


def test_infinite_ring_elements():
    ctx = make_context("A", 2, 3, Mode.ABSTRACT_F, window=(-10, 10))
    for n in range(-4, 6):
        assert Dtilde_elem(ctx, 1, n, 2) == 1 + Xtilde_elem(ctx, 1, n)
        assert equals(ztilde_elem(ctx, 1, n), (1 + Xtilde_elem(ctx, 1, n)) * YT(ctx, 1, n))
        for k in range(3, 6):
            assert Dtilde_elem(ctx, 1, n, k) == 1 + Xtilde_elem(ctx, 1, n) * Dtilde_elem(ctx, 1, n - 1, k - 1)
    # F coefficients are periodic, yt are not
    assert ztilde_elem(ctx, 1, 4) == YT(ctx, 1, 4) + RatFunc.var(f(1, 1)) / YT(ctx, 1, 5)


def test_infinite_ring_stride_non_simply_laced():
    ctx = make_context("B", 2, 2, Mode.ABSTRACT_F, window=(-10, 10))
    assert Xtilde_elem(ctx, 1, 5) == RatFunc.var(f(1, 1)) / (YT(ctx, 1, 5) * YT(ctx, 1, 7))
    assert Dtilde_elem(ctx, 1, 5, 3) == 1 + Xtilde_elem(ctx, 1, 5) * Dtilde_elem(ctx, 1, 3, 2)


def test_projection():
    ctx = make_context("A", 1, 2, window=(-6, 6))
    assert project_pi(ctx, YT(ctx, 1, 2)) == v(1, 0)
    assert project_pi(ctx, ztilde_elem(ctx, 1, 2)) == z_elem(ctx, 1, 0)
    g2 = make_context("G", 2, 2, window=(-12, 12))
    assert project_pi(g2, ztilde_elem(g2, 2, 7)) == z_elem(g2, 2, 1)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.tuples(st.integers(1, 2), st.integers(-4, 4), st.integers(-2, 2)), min_size=1, max_size=4))
def test_projection_intertwines_shift(terms):
    ctx = make_context("A", 2, 3, Mode.ABSTRACT_F, window=(-8, 8))
    a = RatFunc(1)
    for i, n, e in terms:
        a = a * YT(ctx, i, n) ** e + ztilde_elem(ctx, i, n)
    assert tau_shift(ctx, project_pi(ctx, a)) == project_pi(ctx, tau_shift(ctx, a))
    b2 = make_context("B", 2, 2, Mode.ABSTRACT_F, window=(-10, 10))
    b = ztilde_elem(b2, 1, terms[0][1]) * YT(b2, 2, terms[0][2])
    assert tau_shift(b2, project_pi(b2, b), 2) == project_pi(b2, tau_shift(b2, b, 2))


# -- independence smoke test ------------------------------------------------------------------


@pytest.mark.parametrize("family,rank,node", [("A", 1, 1), ("A", 2, 2), ("B", 2, 1), ("B", 2, 2), ("G", 2, 2)])
def test_jacobian_full_rank(family, rank, node):
    ctx = make_context(family, rank, 2, Mode.ABSTRACT_F)
    for size in range(3, 9):
        for seed in range(2):
            rk, rows = jacobian_rank(ctx, node, 1, size, seed)
            assert rk == rows
    assert jacobian_rank(ctx, node, 0, 8)[1] >= 1


def test_jacobian_against_sympy():
    import sympy as sp

    ctx = make_context("A", 1, 2, Mode.ABSTRACT_F, window=(1, 6))
    rows = [to_sympy(ztilde_elem(ctx, 1, n)) for n in range(1, 6)]
    cols = [sp.Symbol(str(yt(1, n))) for n in range(1, 7)]
    jac = sp.Matrix([[sp.diff(r, c) for c in cols] for r in rows])
    rng = random.Random(4)
    pt = {s: sp.Rational(rng.randint(1, 20), rng.randint(1, 20)) for s in jac.free_symbols}
    assert jac.subs(pt).rank() == jacobian_rank(make_context("A", 1, 2, Mode.ABSTRACT_F), 1, 1, 6)[0] == 5


def test_context_is_hashable_and_frozen():
    ctx = make_context("A", 2, 2)
    assert hash(ctx) == hash(make_context("A", 2, 2))
    with pytest.raises(Exception):
        ctx.m = 3  # type: ignore[misc]
    assert isinstance(ctx, Context)
