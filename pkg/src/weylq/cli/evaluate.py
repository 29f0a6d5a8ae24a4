"""Evaluation of parsed expressions against a run configuration."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..exactalg import RatFunc
from ..identities import A_elem, C_elem, D_elem, EqConfig, M_poly, T_poly
from ..identities.builders import windowed
from ..rootdata import root_datum
from ..varid import f as f_var
from ..weyl import Refl, Tau, Word, apply_word
from ..ymring import (
    Context,
    F_elem,
    Mode,
    P_elem,
    X_elem,
    delta_elem,
    z_elem,
    ztilde_elem,
)
from .parser import (
    Apply,
    Bin,
    Builder,
    Expr,
    Neg,
    Num,
    Pow,
    Var,
    WordAtom,
    WordMul,
    WordPow,
    parse_expr,
    render,
)

DEFAULT_WINDOW = (-64, 64)


@dataclass
class RunConfig:
    family: str = "A"
    rank: int = 1
    m: int = 2
    mode: Optional[Mode] = None  # None: each suite's default; eval uses full
    equality: str = "exact"
    seed: int = 0
    trials: int = 16
    suites: list[str] = field(default_factory=lambda: ["all"])
    json: bool = False
    window: tuple[int, int] = DEFAULT_WINDOW

    def __post_init__(self) -> None:
        if self.m < 2:
            raise ValueError(f"m must exceed 1, got {self.m}")
        if self.equality == "randomized" and self.trials < 1:
            raise ValueError("trials must be at least 1")

    def context(self, mode: Optional[Mode] = None) -> Context:
        use = mode or self.mode or Mode.FULL
        return Context(root_datum(self.family, self.rank), self.m, use, self.window)

    def eq(self) -> EqConfig:
        return EqConfig(self.equality, self.seed, self.trials)


class EvalError(ValueError):
    def __init__(self, node: Expr, source: str, cause: Exception):
        a, b = node.span
        snippet = source[a:b] if source else render(node)
        super().__init__(f"in {snippet!r} (columns {a + 1}-{b}): {cause}")
        self.node = node
        self.cause = cause


def to_word(e: Expr) -> Word:
    if isinstance(e, WordAtom):
        return Word((Tau(1),)) if e.kind == "tau" else Word((Refl(e.i, e.s),))
    if isinstance(e, WordMul):
        return to_word(e.left) * to_word(e.right)
    if isinstance(e, WordPow):
        if e.exp < 0:
            base = to_word(e.base)
            if all(isinstance(g, Tau) for g in base.tokens):
                return Word(tuple(Tau(-g.k) for g in reversed(base.tokens))) ** (-e.exp)
            raise ValueError("negative powers are only defined for tau")
        return to_word(e.base) ** e.exp
    raise TypeError(f"not a word: {render(e)}")


def _builder(ctx: Context, b: Builder) -> RatFunc:
    name, a, x = b.name, b.args, b.extra
    if name == "F":
        return F_elem(ctx, *a)
    if name == "X":
        return X_elem(ctx, *a)
    if name == "P":
        return P_elem(ctx, *a)
    if name == "z":
        return z_elem(ctx, *a)
    if name == "zt":
        return ztilde_elem(ctx, *a)
    if name == "delta":
        return delta_elem(ctx, *a)
    if name in ("C", "A"):
        (k,) = a
        i, s = (x + (1,))[:2] if x else (1, 1)
        return (C_elem if name == "C" else A_elem)(ctx, i, s, k)
    if name == "D":
        n, k = a
        i = x[0] if x else 1
        return D_elem(ctx, i, n, k)
    if name == "M":
        k, p = a
        i, s = (x + (1,))[:2] if x else (1, 1)
        return M_poly(windowed(ctx, i, s, k), i, k, p, s)
    if name == "T":
        mm, p = a
        i = x[0] if x else 1
        return T_poly(ctx, i, mm, p)
    raise KeyError(name)


def evaluate(ctx: Context, e: Expr, source: str = "") -> RatFunc:
    try:
        if isinstance(e, Num):
            return RatFunc(e.value)
        if isinstance(e, Var):
            if e.prefix == "y":
                return RatFunc.var(ctx.y_var(e.i, e.t))
            if e.prefix == "f":
                ctx.datum._check(e.i)
                return RatFunc.var(f_var(e.i, e.t % ctx.cm))
            return RatFunc.var(ctx.yt_var(e.i, e.t))
        if isinstance(e, Builder):
            return _builder(ctx, e)
    except EvalError:
        raise
    except (ValueError, KeyError, ArithmeticError) as exc:
        raise EvalError(e, source, exc) from None

    if isinstance(e, Neg):
        return -evaluate(ctx, e.operand, source)
    if isinstance(e, Pow):
        base = evaluate(ctx, e.base, source)
        try:
            return base**e.exp
        except ZeroDivisionError as exc:
            raise EvalError(e, source, exc) from None
    if isinstance(e, Bin):
        left = evaluate(ctx, e.left, source)
        right = evaluate(ctx, e.right, source)
        try:
            return {"+": lambda: left + right, "-": lambda: left - right,
                    "*": lambda: left * right, "/": lambda: left / right}[e.op]()
        except ZeroDivisionError as exc:
            raise EvalError(e, source, exc) from None
    if isinstance(e, Apply):
        arg = evaluate(ctx, e.arg, source)
        try:
            return apply_word(ctx, to_word(e.word), arg)
        except (ValueError, KeyError, ArithmeticError) as exc:
            raise EvalError(e, source, exc) from None
    raise EvalError(e, source, TypeError("a word is not a value; apply it with w(...)"))


def eval_expr(cfg: RunConfig, e: Expr | str) -> RatFunc:
    source = e if isinstance(e, str) else ""
    tree = parse_expr(e) if isinstance(e, str) else e
    return evaluate(cfg.context(), tree, source)
