from __future__ import annotations

import json
from math import comb

import pytest
import sympy as sp

from oracle import identical, to_sympy
from weylq.exactalg import RatFunc
from weylq.identities import (
    DEFAULT_MODE,
    EXACT,
    FAIL,
    PASS,
    SKIPPED,
    SUITES,
    A_elem,
    A_tilde,
    C_elem,
    C_tilde,
    EqConfig,
    Kind,
    M_poly,
    Report,
    SubsetFamily,
    T_poly,
    expand_suites,
    needed_window,
    run_suites,
    verify_A_closed_form,
    verify_A_cyclic_expansion,
    verify_braid,
    verify_C_factorization,
    verify_C_subset_expansion,
    verify_delta_formula,
    verify_delta_squared,
    verify_involution,
    verify_subset_counts,
    windowed,
)
from weylq.identities.report import clock, compare, instance
from weylq.varid import f, y
from weylq.ymring import Mode, WindowError, bold_F, bold_y, make_context, z_elem, ztilde_elem


def F(i, t):
    return RatFunc.var(f(i, t))


def v(i, t):
    return RatFunc.var(y(i, t))


# -- subset families ------------------------------------------------------------------------


def _bitmask_count(ground: list[int], p: int, cyclic_mod: int | None) -> int:
    """Independent enumeration over bitmasks."""
    count = 0
    for mask in range(1 << len(ground)):
        chosen = [ground[b] for b in range(len(ground)) if mask >> b & 1]
        if len(chosen) != p:
            continue
        s = set(chosen)
        if cyclic_mod is None:
            bad = any(j + 1 in s for j in chosen)
        else:
            bad = any((j + 1) % cyclic_mod in s and (j + 1) % cyclic_mod != j for j in chosen)
        count += not bad
    return count


@pytest.mark.parametrize("k", range(2, 11))
def test_path_family_counts(k):
    for p in range((k - 1) // 2 + 1):
        fam = SubsetFamily(Kind.PATH, k, p)
        members = fam.members()
        assert len(members) == comb(k - 1 - p, p) == _bitmask_count(list(range(2, k)), p, None)
        for sigma in members:
            assert len(sigma) == p
            assert len(fam.complement(sigma)) == k - 1 - 2 * p


@pytest.mark.parametrize("m", range(2, 9))
def test_cycle_family_counts(m):
    for p in range(m // 2 + 1):
        fam = SubsetFamily(Kind.CYCLE, m, p)
        assert len(fam) == _bitmask_count(list(range(m)), p, m)
        if m > 2 and p > 0:
            # cyclic non-adjacent p-subsets of an m-cycle: m/(m-p) * binom(m-p, p)
            assert len(fam) * (m - p) == m * comb(m - p, p)


def test_cycle_singletons_on_two_points():
    fam = SubsetFamily(Kind.CYCLE, 2, 1)
    assert fam.members() == [(0,), (1,)]
    assert fam.complement((0,)) == [] and fam.complement((1,)) == []


def test_family_range_checked():
    with pytest.raises(ValueError):
        SubsetFamily(Kind.PATH, 5, 3)
    with pytest.raises(ValueError):
        SubsetFamily(Kind.CYCLE, 5, 3)
    with pytest.raises(ValueError):
        M_poly(windowed(make_context("A", 1, 2, Mode.ABSTRACT_F), 1, 1, 4), 1, 4, 2)


def test_subset_count_reports():
    reports = verify_subset_counts(10)
    assert reports and all(r.status == PASS for r in reports)


# -- C~, A~ -----------------------------------------------------------------------------------


def _wctx(family="A", rank=1, m=2, k=6):
    return windowed(make_context(family, rank, m, Mode.ABSTRACT_F), 1, 1, k)


def test_C_tilde_small_cases():
    ctx = _wctx(m=2)
    zt = lambda n: ztilde_elem(ctx, 1, n)  # noqa: E731
    assert C_tilde(ctx, 1, 1, 1) == 1
    assert C_tilde(ctx, 1, 1, 2) == zt(2)
    assert C_tilde(ctx, 1, 1, 3) == zt(3) * zt(2) - F(1, 0)
    assert C_tilde(ctx, 1, 1, 4) == zt(2) * zt(3) * zt(4) - F(1, 0) * zt(4) - F(1, 1) * zt(2)
    with pytest.raises(ValueError):
        C_tilde(ctx, 1, 1, 0)
    with pytest.raises(ValueError):
        A_tilde(ctx, 1, 1, 1)


def test_needed_window_and_escape():
    assert needed_window(make_context("B", 2, 2), 1, 2, 3) == (3, 9)
    narrow = make_context("A", 1, 2, Mode.ABSTRACT_F, window=(1, 3))
    with pytest.raises(WindowError):
        C_tilde(narrow, 1, 1, 4)


def test_M_poly_examples():
    for k in range(2, 7):
        ctx = _wctx(m=3, k=k)
        prod = RatFunc(1)
        for q in range(2, k + 1):
            prod = prod * ztilde_elem(ctx, 1, q)
        assert M_poly(ctx, 1, k, 0) == prod
    assert M_poly(_wctx(m=3, k=3), 1, 3, 1) == F(1, 2)


def test_T_poly_example():
    ctx = make_context("A", 1, 2, Mode.ABSTRACT_F)
    assert T_poly(ctx, 1, 2, 1) == F(1, 1) + F(1, 0)


def test_A2_abstract_f():
    ctx = make_context("A", 1, 2, Mode.ABSTRACT_F)
    assert A_elem(ctx, 1, 1, 2) == z_elem(ctx, 1, 1) * z_elem(ctx, 1, 0) - F(1, 0) - F(1, 1)


def test_A2_full_mode_golden():
    ctx = make_context("A", 1, 2)
    a = A_elem(ctx, 1, 1, 2)
    assert a == z_elem(ctx, 1, 1) * z_elem(ctx, 1, 2) - 2
    assert a == v(1, 0) * v(1, 1) + 1 / (v(1, 0) * v(1, 1))
    assert a.render() == "(y[1,0]^2*y[1,1]^2 + 1)/(y[1,0]*y[1,1])"


def _sympy_A(m: int) -> tuple[sp.Expr, sp.Expr, sp.Expr]:
    """Periodic A(m) for A1 with free F, by the recurrence written out in sympy.

    Returns (A, bold y, bold F).
    """
    ys = [sp.Symbol(f"y[1,{t}]") for t in range(m)]
    fs = [sp.Symbol(f"f[1,{t}]") for t in range(m)]
    z = lambda n: ys[n % m] + fs[n % m] / ys[(n + 1) % m]  # noqa: E731
    Fm = lambda n: fs[n % m]  # noqa: E731
    C = {1: sp.Integer(1), 2: z(2)}
    for k in range(3, m + 1):
        C[k] = z(k) * C[k - 1] - Fm(k - 1) * C[k - 2]
    tail = Fm(m) * C[m - 1]
    shift = {s: ys[(t + 1) % m] for t, s in enumerate(ys)} | {s: fs[(t + 1) % m] for t, s in enumerate(fs)}
    A = z(1) * C[m] - tail - tail.xreplace(shift)
    return A, sp.Mul(*ys), sp.Mul(*fs)


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_A_matches_sympy_recurrence_and_closed_form(m):
    A, ybold, Fbold = _sympy_A(m)
    assert identical(A, ybold + Fbold / ybold)
    ctx = make_context("A", 1, m, Mode.ABSTRACT_F)
    assert identical(to_sympy(A_elem(ctx, 1, 1, m)), A)
    assert identical(to_sympy(bold_y(ctx, 1, 1)), ybold)
    assert identical(to_sympy(bold_F(ctx, 1, 1)), Fbold)


def test_C_projection_b2():
    ctx = make_context("B", 2, 2, Mode.ABSTRACT_F)
    c2 = C_elem(ctx, 1, 2, 2)
    assert c2 == z_elem(ctx, 1, 5)  # zt(2 e + s - 1) = zt(5) -> z(1)
    assert c2 == z_elem(ctx, 1, 1)


# -- verify_* -----------------------------------------------------------------------------------


def test_closed_form_checks_a1():
    ctx = make_context("A", 1, 2)
    for report in verify_A_closed_form(ctx, 1, 1) + verify_delta_squared(ctx, 1, 1):
        assert report.status == PASS, report.line()


def test_delta_formula_readings():
    a1 = make_context("A", 1, 3, Mode.ABSTRACT_F)
    reps = verify_delta_formula(a1, 1, 1)
    assert {r.instance["reading"] for r in reps} == {"shifted", "unshifted"}
    assert all(r.status == PASS for r in reps)
    b2 = make_context("B", 2, 2, Mode.ABSTRACT_F)
    reps = verify_delta_formula(b2, 1, 2)
    by_reading = {r.instance["reading"]: r for r in reps}
    assert by_reading["shifted"].status == PASS
    assert by_reading["unshifted"].status == SKIPPED
    assert "differ" in by_reading["unshifted"].instance["note"]


def test_factorization_and_expansion_reports():
    ctx = make_context("C", 2, 2, Mode.ABSTRACT_F)
    for s in (1, 2):
        for k in range(2, 6):
            assert all(r.ok for r in verify_C_factorization(ctx, 2, s, k))
            assert all(r.status == PASS for r in verify_C_subset_expansion(ctx, 2, s, k))
    for m in range(2, 7):
        assert verify_A_cyclic_expansion(make_context("A", 2, m, Mode.ABSTRACT_F), 2)[0].status == PASS


def test_braid_reports_name_generators():
    ctx = make_context("A", 2, 2)
    reps = verify_braid(ctx, 1, 2)
    assert {r.instance["generator"] for r in reps} == {"y[1,0]", "y[1,1]", "y[2,0]", "y[2,1]"}
    assert all(r.status == PASS for r in reps)
    reps = verify_involution(ctx, 1, EqConfig("randomized", seed=4, trials=3))
    assert all(r.instance["seed"] == 4 and r.instance["trials"] == 3 for r in reps)


def test_braid_skipped_in_abstract_mode():
    reps = verify_braid(make_context("A", 2, 2, Mode.ABSTRACT_F), 1, 2)
    assert reps and all(r.status == SKIPPED for r in reps)


# -- reports --------------------------------------------------------------------------------------


def test_report_invariants():
    with pytest.raises(ValueError):
        Report("x", {}, FAIL, None)
    with pytest.raises(ValueError):
        Report("x", {}, PASS, {"lhs": "1"})
    r = Report("x", {"type": "A1"}, SKIPPED, None, 3)
    assert r.ok and set(r.to_json()) == {"check", "instance", "status", "witness", "elapsed_ms"}
    json.dumps(r.to_json())


def test_failing_comparison_carries_witness():
    ctx = make_context("A", 1, 2)
    with clock() as c:
        rep = compare("demo", instance(ctx, EXACT, node=1), v(1, 0), v(1, 1), EXACT, c, where="y[1,0]")
    assert rep.status == FAIL and not rep.ok
    assert rep.witness == {"at": "y[1,0]", "lhs": "y[1,0]", "rhs": "y[1,1]"}
    assert "witness" in rep.line()


def test_sort_key_is_numeric():
    reps = [Report("c", {"t": t}, PASS) for t in (10, 2, 1)]
    assert [r.instance["t"] for r in sorted(reps, key=Report.sort_key)] == [1, 2, 10]


def test_eq_config_validation():
    with pytest.raises(ValueError):
        EqConfig("maybe")
    with pytest.raises(ValueError):
        EqConfig("randomized", trials=0)
    assert EqConfig().describe() == {"equality": "exact"}


# -- suites ----------------------------------------------------------------------------------------


def test_expand_suites():
    assert expand_suites(["all"]) == list(SUITES)
    assert expand_suites(["braid", "involution", "braid"]) == ["involution", "braid"]
    with pytest.raises(KeyError):
        expand_suites(["nope"])
    with pytest.raises(ValueError):
        expand_suites([])
    with pytest.raises(ValueError):
        expand_suites([" ", ""])
    assert set(DEFAULT_MODE) == set(SUITES)


def test_all_suites_pass_a1_m2():
    reps = run_suites(make_context("A", 1, 2), ["all"], EXACT)
    assert reps and all(r.status == PASS for r in reps)
    modes = {r.check: r.instance.get("mode") for r in reps}
    assert modes["involution"] == "full"
    assert modes["C-factorization"] == "abstract-f"


def test_mode_override():
    reps = run_suites(make_context("A", 1, 2), ["a-closed-form"], EXACT, Mode.FULL)
    assert reps and {r.instance["mode"] for r in reps} == {"full"}
    assert all(r.status == PASS for r in reps)


def test_suites_pass_b2_m2():
    reps = run_suites(make_context("B", 2, 2), ["all"], EXACT)
    assert not [r.line() for r in reps if r.status == FAIL]
    assert {r.instance.get("reading") for r in reps if r.status == SKIPPED} == {"unshifted"}
