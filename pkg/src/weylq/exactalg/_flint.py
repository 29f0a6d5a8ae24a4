"""Bridge to python-flint for the heavy kernels.

Only four things go through flint: large products, polynomial gcd
cancellation, factorization of substitution images, and the assembly step of
factored substitution.  Everything is converted back to :class:`LaurentPoly`
before leaving this module.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Any, Iterable, Mapping, Sequence

import flint

from .laurent import LaurentPoly, Monomial, mono_mul

def _context(variables: Iterable[Any]):
    ordered = sorted(set(variables))
    names = tuple(str(v) for v in ordered)
    ctx = flint.fmpz_mpoly_ctx.get(names, "lex")
    return ctx, ordered, {v: k for k, v in enumerate(ordered)}


def _to_fmpz(p: LaurentPoly, ctx, index: Mapping[Any, int], scale: int = 1):
    """Convert a polynomial (non-negative exponents) with coefficients * scale integral."""
    n = len(index)
    data = {}
    for m, c in p.terms.items():
        exps = [0] * n
        for v, e in m:
            exps[index[v]] = e
        c = c * scale
        if isinstance(c, Fraction):
            assert c.denominator == 1
            c = c.numerator
        data[tuple(exps)] = c
    return ctx.from_dict(data)


def _from_fmpz(q, ordered: Sequence[Any], shift: Monomial = ()) -> LaurentPoly:
    out = {}
    for exps, c in q.to_dict().items():
        m = tuple((ordered[k], int(e)) for k, e in enumerate(exps) if e)
        if shift:
            m = mono_mul(m, shift)
        out[m] = int(c)
    return LaurentPoly._raw(out)


def _denominator_lcm(p: LaurentPoly) -> int:
    l = 1
    for c in p.terms.values():
        if isinstance(c, Fraction):
            l = lcm(l, c.denominator)
    return l


def _split_monomial(p: LaurentPoly) -> tuple[Monomial, LaurentPoly]:
    """Write p = x^mu * q with q a polynomial having no monomial factor."""
    mins = p.min_exponents()
    if not mins:
        return (), p
    mu = tuple(sorted(mins.items()))
    neg = tuple((v, -e) for v, e in mu)
    return mu, p.shift(neg)


def mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    mua, qa = _split_monomial(a)
    mub, qb = _split_monomial(b)
    la, lb = _denominator_lcm(qa), _denominator_lcm(qb)
    ctx, ordered, index = _context(qa.variables() | qb.variables())
    prod = _to_fmpz(qa, ctx, index, la) * _to_fmpz(qb, ctx, index, lb)
    out = _from_fmpz(prod, ordered, mono_mul(mua, mub))
    if la * lb != 1:
        out = out.scale(Fraction(1, la * lb))
    return out


def cancel(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Divide out the polynomial gcd.  Inputs must be integer polynomials."""
    ctx, ordered, index = _context(num.variables() | den.variables())
    n = _to_fmpz(num, ctx, index)
    d = _to_fmpz(den, ctx, index)
    g = n.gcd(d)
    if g.is_one():
        return num, den
    return _from_fmpz(n / g, ordered), _from_fmpz(d / g, ordered)


def factor(p: LaurentPoly) -> tuple[Fraction, list[tuple[LaurentPoly, int]]]:
    """Factor an integer-or-rational polynomial into (unit, [(irreducible, exp)])."""
    if p.is_zero():
        raise ZeroDivisionError("cannot factor zero")
    mu, q = _split_monomial(p)
    l = _denominator_lcm(q)
    factors: list[tuple[LaurentPoly, int]] = [(LaurentPoly.var(v), e) for v, e in mu]
    if q.is_constant():
        return Fraction(q.constant_value()), factors
    ctx, ordered, index = _context(q.variables())
    content, parts = _to_fmpz(q, ctx, index, l).factor()
    for f, e in parts:
        factors.append((_from_fmpz(f, ordered), int(e)))
    return Fraction(int(content), l), factors


class FactoredImage:
    """A nonzero rational function written as unit * prod(factor ** exp)."""

    __slots__ = ("unit", "exps")

    def __init__(self, unit: Fraction, exps: dict[LaurentPoly, int]):
        self.unit = unit
        self.exps = exps

    @classmethod
    def of(cls, num: LaurentPoly, den: LaurentPoly) -> FactoredImage:
        un, fn = factor(num)
        ud, fd = factor(den)
        exps: dict[LaurentPoly, int] = {}
        for f, e in fn:
            exps[f] = exps.get(f, 0) + e
        for f, e in fd:
            exps[f] = exps.get(f, 0) - e
        return cls(un / ud, {f: e for f, e in exps.items() if e})


def substitute(
    num: LaurentPoly, den: LaurentPoly, images: Mapping[Any, FactoredImage]
) -> tuple[LaurentPoly, LaurentPoly]:
    """Substitute factored images into num/den and cancel.

    Every term becomes unit * prod(factor ** k).  Pulling out the smallest power
    of each factor over all terms of both num and den gives a denominator that
    is already the exact lcm over the factor basis, so intermediate swell stays
    close to the size of the reduced result.
    """
    rows = []
    for which, poly in ((0, num), (1, den)):
        for m, c in poly.terms.items():
            coef = Fraction(c)
            ex: dict[LaurentPoly, int] = {}
            for v, e in m:
                img = images.get(v)
                if img is None:
                    f = LaurentPoly.var(v)
                    ex[f] = ex.get(f, 0) + e
                    continue
                coef *= img.unit**e
                for f, k in img.exps.items():
                    ex[f] = ex.get(f, 0) + k * e
            rows.append((which, coef, ex))

    # smallest power of each factor over all rows; may be positive
    floor: dict[LaurentPoly, int] = {}
    for f in {f for _, _, ex in rows for f in ex}:
        floor[f] = min(ex.get(f, 0) for _, _, ex in rows)

    variables: set = set()
    for f in floor:
        variables |= f.variables()
    ctx, ordered, index = _context(variables)
    scale = 1
    for _, coef, _ in rows:
        scale = lcm(scale, coef.denominator)

    # factors are integral: variables or primitive flint factors
    fl = {f: _to_fmpz(f, ctx, index) for f in floor}
    powers: dict[tuple[LaurentPoly, int], Any] = {}

    def power(f: LaurentPoly, k: int):
        key = (f, k)
        got = powers.get(key)
        if got is None:
            got = fl[f] ** k
            powers[key] = got
        return got

    sums = [ctx.from_dict({}), ctx.from_dict({})]
    for which, coef, ex in rows:
        term = ctx.constant(int(coef * scale))
        for f, lo in floor.items():
            k = ex.get(f, 0) - lo
            if k:
                term *= power(f, k)
        sums[which] += term

    n, d = sums
    if d.is_zero():
        raise ZeroDivisionError("substitution sends the denominator to zero")
    if n.is_zero():
        return LaurentPoly(), LaurentPoly.constant(1)
    g = n.gcd(d)
    if not g.is_one():
        n, d = n / g, d / g
    return _from_fmpz(n, ordered), _from_fmpz(d, ordered)
