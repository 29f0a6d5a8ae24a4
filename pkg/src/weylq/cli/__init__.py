"""Command-line front end and its expression language."""

from .evaluate import EvalError, RunConfig, eval_expr
from .parser import ParseError, parse_expr, render

__all__ = ["EvalError", "ParseError", "RunConfig", "eval_expr", "parse_expr", "render"]
