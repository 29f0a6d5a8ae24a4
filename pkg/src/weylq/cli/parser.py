"""Expression language: tokenizer, AST and a Pratt parser.

Precedence, loosest first: ``+ -``, ``* /``, unary ``-``, ``^``, then word
application ``w(expr)``.  Binary operators associate to the left.  Exponents
are signed integer literals.

Words are built from ``r[i]``, ``r[i,s]`` and ``tau`` with ``*`` and ``^k``;
a word followed by ``(`` is applied to the parenthesised expression.  A product
``w1*w2(x)`` is read as the composite word applied to x, which is the same map.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union


class ParseError(ValueError):
    def __init__(self, message: str, column: int):
        super().__init__(f"column {column}: {message}")
        self.message = message
        self.column = column


# -- tokens -----------------------------------------------------------------


@dataclass(frozen=True)
class Tok:
    kind: str  # INT RAT NAME OP LBR RBR LP RP COMMA SEMI END
    text: str
    pos: int  # 0-based offset


_TOKEN_SPEC = [
    ("RAT", r"\d+/\d+(?![\d\[])(?!\s*\^)"),
    ("INT", r"\d+"),
    ("NAME", r"[A-Za-z_][A-Za-z_0-9]*"),
    ("OP", r"[-+*/^]"),
    ("LBR", r"\["),
    ("RBR", r"\]"),
    ("LP", r"\("),
    ("RP", r"\)"),
    ("COMMA", r","),
    ("SEMI", r";"),
    ("WS", r"\s+"),
]
_MASTER = re.compile("|".join(f"(?P<{k}>{p})" for k, p in _TOKEN_SPEC))


def tokenize(src: str) -> list[Tok]:
    out = []
    pos = 0
    while pos < len(src):
        match = _MASTER.match(src, pos)
        if match is None:
            raise ParseError(f"unexpected character {src[pos]!r}", pos + 1)
        kind = match.lastgroup
        if kind != "WS":
            out.append(Tok(kind, match.group(), pos))
        pos = match.end()
    out.append(Tok("END", "", len(src)))
    return out


# -- AST ----------------------------------------------------------------------

Span = tuple[int, int]


@dataclass(frozen=True)
class Num:
    value: Fraction
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Var:
    prefix: str  # y, f, yt
    i: int
    t: int
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Builder:
    name: str
    args: tuple[int, ...]
    extra: tuple[int, ...] = ()  # indices after ';'
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Neg:
    operand: Expr
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Bin:
    op: str
    left: Expr
    right: Expr
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Pow:
    base: Expr
    exp: int
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class WordAtom:
    kind: str  # "r" or "tau"
    i: int = 0
    s: Optional[int] = None
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class WordMul:
    left: Expr
    right: Expr
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class WordPow:
    base: Expr
    exp: int
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Apply:
    word: Expr
    arg: Expr
    span: Span = field(default=(0, 0), compare=False)


Expr = Union[Num, Var, Builder, Neg, Bin, Pow, WordAtom, WordMul, WordPow, Apply]

WORD_NODES = (WordAtom, WordMul, WordPow)

# name -> (required index count, allowed counts after ';')
BUILDERS: dict[str, tuple[int, tuple[int, ...]]] = {
    "F": (2, ()),
    "X": (2, ()),
    "P": (2, ()),
    "z": (2, ()),
    "zt": (2, ()),
    "delta": (2, ()),
    "C": (1, (1, 2)),
    "A": (1, (1, 2)),
    "D": (2, (1,)),
    "M": (2, (1, 2)),
    "T": (2, (1,)),
}
VARIABLES = ("y", "f", "yt")


def is_word(e: Expr) -> bool:
    return isinstance(e, WORD_NODES)


# -- parser -------------------------------------------------------------------

BP_ADD, BP_MUL, BP_NEG, BP_POW, BP_APPLY = 10, 20, 30, 40, 50


class Parser:
    def __init__(self, src: str):
        self.src = src
        self.toks = tokenize(src)
        self.k = 0

    @property
    def tok(self) -> Tok:
        return self.toks[self.k]

    def advance(self) -> Tok:
        t = self.toks[self.k]
        self.k += 1
        return t

    def expect(self, kind: str, text: Optional[str] = None) -> Tok:
        t = self.tok
        if t.kind != kind or (text is not None and t.text != text):
            want = text or kind.lower()
            got = t.text or "end of input"
            raise ParseError(f"expected {want!r}, got {got!r}", t.pos + 1)
        return self.advance()

    def parse(self) -> Expr:
        e = self.expr(0)
        if self.tok.kind != "END":
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.pos + 1)
        return e

    # Pratt loop
    def expr(self, min_bp: int) -> Expr:
        left = self.prefix()
        while True:
            t = self.tok
            if t.kind == "LP" and is_word(left):
                left = self.application(left)
                continue
            if t.kind != "OP":
                break
            op = t.text
            bp = {"+": BP_ADD, "-": BP_ADD, "*": BP_MUL, "/": BP_MUL, "^": BP_POW}[op]
            if bp <= min_bp:
                break
            self.advance()
            if op == "^":
                exp = self.signed_int()
                span = (left.span[0], self.toks[self.k - 1].pos + len(self.toks[self.k - 1].text))
                left = WordPow(left, exp, span) if is_word(left) else Pow(left, exp, span)
                continue
            right = self.expr(bp)
            left = self.combine(op, left, right, t)
        return left

    def combine(self, op: str, left: Expr, right: Expr, t: Tok) -> Expr:
        span = (left.span[0], right.span[1])
        lw, rw = is_word(left), is_word(right)
        if op == "*" and lw and rw:
            return WordMul(left, right, span)
        if op == "*" and lw and isinstance(right, Apply):
            # w1 * w2(x) is (w1 w2)(x)
            return Apply(WordMul(left, right.word, (left.span[0], right.word.span[1])), right.arg, span)
        if lw or rw:
            raise ParseError(f"operator {op!r} cannot combine a word with a value", t.pos + 1)
        return Bin(op, left, right, span)

    def application(self, word: Expr) -> Apply:
        self.expect("LP")
        arg = self.expr(0)
        if is_word(arg):
            raise ParseError("a word must be applied to a value", arg.span[0] + 1)
        rp = self.expect("RP")
        return Apply(word, arg, (word.span[0], rp.pos + 1))

    def signed_int(self) -> int:
        sign = 1
        if self.tok.kind == "OP" and self.tok.text in "+-":
            sign = -1 if self.advance().text == "-" else 1
        if self.tok.kind == "LP":
            self.advance()
            v = self.signed_int()
            self.expect("RP")
            return sign * v
        t = self.tok
        if t.kind != "INT":
            raise ParseError(f"exponent must be an integer, got {t.text or 'end of input'!r}", t.pos + 1)
        self.advance()
        return sign * int(t.text)

    def prefix(self) -> Expr:
        t = self.tok
        if t.kind == "INT":
            self.advance()
            return Num(Fraction(int(t.text)), (t.pos, t.pos + len(t.text)))
        if t.kind == "RAT":
            self.advance()
            p, q = t.text.split("/")
            if int(q) == 0:
                raise ParseError("zero denominator in literal", t.pos + 1)
            return Num(Fraction(int(p), int(q)), (t.pos, t.pos + len(t.text)))
        if t.kind == "OP" and t.text == "-":
            self.advance()
            operand = self.expr(BP_NEG)
            if is_word(operand):
                raise ParseError("cannot negate a word", t.pos + 1)
            return Neg(operand, (t.pos, operand.span[1]))
        if t.kind == "OP" and t.text == "+":
            self.advance()
            return self.expr(BP_NEG)
        if t.kind == "LP":
            self.advance()
            inner = self.expr(0)
            self.expect("RP")
            return inner
        if t.kind == "NAME":
            return self.named()
        raise ParseError(f"unexpected {t.text or 'end of input'!r}", t.pos + 1)

    def index_list(self) -> tuple[tuple[int, ...], tuple[int, ...], int]:
        self.expect("LBR")
        groups: list[list[int]] = [[]]
        while True:
            groups[-1].append(self.signed_index())
            t = self.tok
            if t.kind == "COMMA":
                self.advance()
                continue
            if t.kind == "SEMI":
                if len(groups) == 2:
                    raise ParseError("only one ';' allowed in an index list", t.pos + 1)
                self.advance()
                groups.append([])
                continue
            if t.kind == "RBR":
                end = self.advance().pos + 1
                break
            raise ParseError(f"malformed index list near {t.text or 'end of input'!r}", t.pos + 1)
        extra = tuple(groups[1]) if len(groups) == 2 else ()
        return tuple(groups[0]), extra, end

    def signed_index(self) -> int:
        sign = 1
        if self.tok.kind == "OP" and self.tok.text == "-":
            self.advance()
            sign = -1
        t = self.tok
        if t.kind != "INT":
            raise ParseError(f"malformed index list: expected an integer, got {t.text or 'end of input'!r}", t.pos + 1)
        self.advance()
        return sign * int(t.text)

    def named(self) -> Expr:
        t = self.advance()
        name = t.text
        start = t.pos
        if name == "tau":
            return WordAtom("tau", span=(start, start + 3))
        if name not in BUILDERS and name not in VARIABLES and name != "r":
            raise ParseError(f"unknown builder name {name!r}", start + 1)
        if self.tok.kind != "LBR":
            raise ParseError(f"{name!r} needs an index list", self.tok.pos + 1)
        args, extra, end = self.index_list()
        span = (start, end)
        if name == "r":
            if extra or len(args) not in (1, 2):
                raise ParseError("malformed index list: r takes [i] or [i,s]", start + 1)
            return WordAtom("r", args[0], args[1] if len(args) == 2 else None, span)
        if name in VARIABLES:
            if extra or len(args) != 2:
                raise ParseError(f"malformed index list: {name} takes two indices", start + 1)
            return Var(name, args[0], args[1], span)
        need, extras = BUILDERS[name]
        if len(args) != need or (extra and len(extra) not in extras):
            raise ParseError(f"malformed index list for {name}: expected {need} indices", start + 1)
        return Builder(name, args, extra, span)


def parse_expr(source: str) -> Expr:
    return Parser(source).parse()


# -- rendering -----------------------------------------------------------------


def _prec(e: Expr) -> int:
    if isinstance(e, Bin):
        return BP_ADD if e.op in "+-" else BP_MUL
    if isinstance(e, Neg):
        return BP_NEG
    if isinstance(e, (Pow, WordPow)):
        return BP_POW
    if isinstance(e, WordMul):
        return BP_MUL
    if isinstance(e, Num) and e.value.denominator != 1:
        return BP_MUL
    return BP_APPLY


def _wrap(e: Expr, ok: bool) -> str:
    s = render(e)
    return s if ok else f"({s})"


def _indices(args, extra) -> str:
    body = ",".join(map(str, args))
    if extra:
        body += ";" + ",".join(map(str, extra))
    return f"[{body}]"


def render(e: Expr) -> str:
    if isinstance(e, Num):
        v = e.value
        s = str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
        return s if v >= 0 else f"({s})"
    if isinstance(e, Var):
        return f"{e.prefix}[{e.i},{e.t}]"
    if isinstance(e, Builder):
        return e.name + _indices(e.args, e.extra)
    if isinstance(e, WordAtom):
        if e.kind == "tau":
            return "tau"
        return f"r[{e.i}]" if e.s is None else f"r[{e.i},{e.s}]"
    if isinstance(e, Neg):
        return "-" + _wrap(e.operand, _prec(e.operand) > BP_NEG)
    if isinstance(e, (Pow, WordPow)):
        base = _wrap(e.base, _prec(e.base) > BP_POW)
        return f"{base}^{e.exp}"
    if isinstance(e, Bin):
        bp = _prec(e)
        left = _wrap(e.left, _prec(e.left) >= bp)
        right = _wrap(e.right, _prec(e.right) > bp)
        return f"{left} {e.op} {right}"
    if isinstance(e, WordMul):
        return f"{_wrap(e.left, _prec(e.left) >= BP_MUL)}*{_wrap(e.right, _prec(e.right) > BP_MUL)}"
    if isinstance(e, Apply):
        word = _wrap(e.word, isinstance(e.word, (WordAtom, WordPow)))
        return f"{word}({render(e.arg)})"
    raise TypeError(f"not an expression node: {e!r}")
