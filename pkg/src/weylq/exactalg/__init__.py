"""Exact Laurent-polynomial and rational-function arithmetic."""

from .laurent import LaurentPoly, mono_cmp, mono_key
from .ratfunc import (
    RatFunc,
    SingularPointError,
    SubstitutionError,
    const,
    equals,
    eval_at,
    eval_mod,
    substitute,
)

__all__ = [
    "LaurentPoly",
    "RatFunc",
    "SingularPointError",
    "SubstitutionError",
    "const",
    "equals",
    "eval_at",
    "eval_mod",
    "mono_cmp",
    "mono_key",
    "substitute",
]
