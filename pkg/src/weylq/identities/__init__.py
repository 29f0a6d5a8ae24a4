"""Derived families and verification procedures."""

from .builders import A_elem, A_tilde, C_elem, C_tilde, D_elem, needed_window, top_index, windowed
from .checks import (
    verify_A_closed_form,
    verify_A_cyclic_expansion,
    verify_braid,
    verify_C_factorization,
    verify_C_subset_expansion,
    verify_cross_delta_fixing,
    verify_D_recursion,
    verify_D_top,
    verify_delta_formula,
    verify_delta_squared,
    verify_delta_tau_invariance,
    verify_F_fixing,
    verify_involution,
    verify_P_transform,
    verify_product_decomposition,
    verify_PX_fixed,
    verify_r_on_D,
    verify_r_on_X,
    verify_subreflection_commute,
    verify_subreflection_involution,
    verify_subset_counts,
    verify_telescoping,
    verify_z_invariance,
)
from .report import EXACT, FAIL, PASS, SKIPPED, EqConfig, Report
from .subsets import Kind, M_poly, SubsetFamily, T_poly
from .suites import DEFAULT_MODE, SUITES, expand_suites, run_suites

__all__ = [name for name in dir() if not name.startswith("_")]
