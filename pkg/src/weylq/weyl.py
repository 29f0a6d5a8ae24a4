"""Reflections r_i, sub-reflections r_{i,s} and the shift tau as field maps.

Composition convention: a word ``g1 g2 ... gk`` acts as g1(g2(...gk(a))), the
composition of field automorphisms (sigma rho)(x) = sigma(rho(x)).  Words are
applied lazily, one generator at a time, to the target expression.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Union

from .exactalg import RatFunc, equals, eval_mod, substitute
from .exactalg.ratfunc import SingularPointError
from .rootdata import coxeter_order
from .varid import Role, VarId
from .ymring import Context, N_set, P_elem, X_elem, Y, check_s, tau_shift

MOD_PRIME = 2**61 - 1


@dataclass(frozen=True)
class Automorphism:
    ctx: Context
    images: Mapping[VarId, RatFunc]
    label: str

    def __call__(self, a: RatFunc) -> RatFunc:
        return apply(self, a)


def _image(ctx: Context, i: int, t: int) -> RatFunc:
    e = ctx.datum.e(i)
    return P_elem(ctx, i, t - 2 * e) / P_elem(ctx, i, t - e) * Y(ctx, i, t) * X_elem(ctx, i, t - e)


_AUTOS: dict = {}


def reflection(ctx: Context, i: int) -> Automorphism:
    key = (ctx, i, None)
    if key not in _AUTOS:
        ctx.datum._check(i)
        images = {ctx.y_var(i, t): _image(ctx, i, t) for t in range(ctx.cm)}
        _AUTOS[key] = Automorphism(ctx, images, f"r[{i}]")
    return _AUTOS[key]


def sub_reflection(ctx: Context, i: int, s: int) -> Automorphism:
    key = (ctx, i, s)
    if key not in _AUTOS:
        check_s(ctx, i, s)
        images = {ctx.y_var(i, t): _image(ctx, i, t) for t in N_set(ctx, i, s)}
        _AUTOS[key] = Automorphism(ctx, images, f"r[{i},{s}]")
    return _AUTOS[key]


def apply(auto: Automorphism, a: RatFunc) -> RatFunc:
    return substitute(a, auto.images)


# -- words -------------------------------------------------------------------------


@dataclass(frozen=True)
class Refl:
    i: int
    s: Optional[int] = None

    def __str__(self) -> str:
        return f"r[{self.i}]" if self.s is None else f"r[{self.i},{self.s}]"


@dataclass(frozen=True)
class Tau:
    k: int = 1

    def __str__(self) -> str:
        return "tau" if self.k == 1 else f"tau^{self.k}"


Token = Union[Refl, Tau]


@dataclass(frozen=True)
class Word:
    tokens: tuple[Token, ...] = ()

    def __str__(self) -> str:
        return "*".join(map(str, self.tokens)) if self.tokens else "id"

    def __mul__(self, other: Word) -> Word:
        return Word(self.tokens + other.tokens)

    def __pow__(self, k: int) -> Word:
        if k < 0:
            raise ValueError("negative word powers are not supported")
        return Word(self.tokens * k)

    def __len__(self) -> int:
        return len(self.tokens)

    def validate(self, ctx: Context) -> None:
        for g in self.tokens:
            if isinstance(g, Refl):
                ctx.datum._check(g.i)
                if g.s is not None:
                    check_s(ctx, g.i, g.s)


def word(*tokens: Token | str) -> Word:
    out: list[Token] = []
    for tok in tokens:
        out.extend(parse_word(tok).tokens if isinstance(tok, str) else [tok])
    return Word(tuple(out))


_TOKEN_RE = re.compile(r"\s*(?:r\[\s*(\d+)\s*(?:,\s*(\d+)\s*)?\]|tau(?:\s*\^\s*(-?\d+))?)\s*")


def parse_word(text: str) -> Word:
    """Parse ``r[1]*r[2,1]*tau^3``; the empty string is the identity."""
    text = text.strip()
    if not text or text == "id":
        return Word()
    tokens: list[Token] = []
    for piece in text.split("*"):
        match = _TOKEN_RE.fullmatch(piece)
        if match is None:
            raise ValueError(f"bad word token {piece.strip()!r}")
        i, s, k = match.groups()
        if i is not None:
            tokens.append(Refl(int(i), int(s) if s else None))
        else:
            tokens.append(Tau(int(k) if k else 1))
    return Word(tuple(tokens))


def automorphism_of(ctx: Context, g: Refl) -> Automorphism:
    return reflection(ctx, g.i) if g.s is None else sub_reflection(ctx, g.i, g.s)


def apply_token(ctx: Context, g: Token, a: RatFunc) -> RatFunc:
    if isinstance(g, Tau):
        return tau_shift(ctx, a, g.k)
    return apply(automorphism_of(ctx, g), a)


def apply_word(ctx: Context, w: Word, a: RatFunc) -> RatFunc:
    """Right-to-left: the last token acts first."""
    w.validate(ctx)
    for g in reversed(w.tokens):
        a = apply_token(ctx, g, a)
    return a


def alternating(i: int, j: int, length: int) -> Word:
    return Word(tuple(Refl(i if k % 2 == 0 else j) for k in range(length)))


def braid_word(ctx: Context, i: int, j: int) -> Word:
    return alternating(i, j, 2 * coxeter_order(ctx.datum, i, j))


# -- equality of automorphisms ------------------------------------------------------


def generator_list(ctx: Context, extra: Iterable[VarId] = ()) -> list[VarId]:
    """Periodic y's plus, in abstract-f mode, the f's (moved only by tau)."""
    gens = ctx.generators()
    if ctx.mode.value == "abstract-f":
        gens += [VarId(Role.F, i, t) for i in ctx.datum.nodes for t in range(ctx.cm)]
    return gens + list(extra)


def compare_on_generator(
    ctx: Context,
    w1: Word,
    w2: Word,
    v: VarId,
    mode: str = "exact",
    *,
    seed: int = 0,
    trials: int = 16,
) -> tuple[bool, Optional[tuple[RatFunc, RatFunc]]]:
    """Return (equal, sides); sides are the two images in exact mode."""
    if mode == "exact":
        x = RatFunc.var(v)
        a, b = apply_word(ctx, w1, x), apply_word(ctx, w2, x)
        return equals(a, b, "exact"), (a, b)
    if mode != "randomized":
        raise ValueError(f"unknown equality mode {mode!r}")
    return _randomized_equal(ctx, w1, w2, v, seed, trials), None


def equal_on_generators(
    ctx: Context,
    w1: Word,
    w2: Word,
    mode: str = "exact",
    *,
    seed: int = 0,
    trials: int = 16,
) -> bool:
    for v in generator_list(ctx):
        ok, _ = compare_on_generator(ctx, w1, w2, v, mode, seed=seed, trials=trials)
        if not ok:
            return False
    return True


def _push(ctx: Context, w: Word, point: dict[VarId, int]) -> dict[VarId, int]:
    """Point p with (g1...gk)(x)(p0) = x(p) for every generator x.

    Since g(a)(p) = a(g(.)(p)), the point is pushed through g1 first.
    """
    for g in w.tokens:
        if isinstance(g, Tau):
            new = {}
            for v in point:
                src = VarId(v.role, v.node, (v.time + g.k) % ctx.cm)
                new[v] = point[src]
            point = new
            continue
        auto = automorphism_of(ctx, g)
        new = dict(point)
        for v, img in auto.images.items():
            new[v] = eval_mod(img, point, MOD_PRIME)
        point = new
    return point


def _randomized_equal(ctx: Context, w1: Word, w2: Word, v: VarId, seed: int, trials: int) -> bool:
    """Evaluate both sides modulo a 61-bit prime at random points.

    One-sided error: a mismatch is a proof of inequality.
    """
    w1.validate(ctx)
    w2.validate(ctx)
    rng = random.Random(f"{seed}:{v}")
    gens = generator_list(ctx)
    done = singular = 0
    while done < trials:
        point = {g: rng.randint(1, 2**31) for g in gens}
        try:
            a = _push(ctx, w1, point)[v]
            b = _push(ctx, w2, point)[v]
        except (SingularPointError, ZeroDivisionError):
            singular += 1
            if singular >= 100:
                raise RuntimeError("too many consecutive singular sample points") from None
            continue
        singular = 0
        if a != b:
            return False
        done += 1
    return True
