"""Normalized fractions of Laurent polynomials.

Normal form of ``num/den``:

1. the monomial gcd of all terms of num and den is divided out, so both are
   ordinary polynomials;
2. the polynomial gcd of num and den is divided out;
3. coefficients are cleared to jointly coprime integers;
4. the leading coefficient of den (graded-lex) is positive.

Step 2 makes the representation canonical, so ``==`` on RatFunc is equality
of rational functions.  :func:`equals` additionally offers the
cross-multiplication test and a randomized evaluation test.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd, lcm
from typing import Any, Callable, Mapping, Union

from . import _flint
from .laurent import LaurentPoly

Scalar = Union[int, Fraction]

SAMPLE_HI = 2**31
MAX_SINGULAR_RESAMPLES = 100


class SingularPointError(ZeroDivisionError):
    """The denominator vanishes at the requested point."""


class SubstitutionError(ZeroDivisionError):
    """A substitution sent a denominator to the zero function."""


def _normal_form(num: LaurentPoly, den: LaurentPoly, coprime: bool) -> tuple[LaurentPoly, LaurentPoly]:
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    if num.is_zero():
        return LaurentPoly(), LaurentPoly.constant(1)

    # (1) joint monomial content
    both = LaurentPoly._raw({**num.terms, **den.terms})
    mins = both.min_exponents()
    if len(num) + len(den) != len(both):
        # shared monomials collapsed in the union; recompute on the full set
        mins = _joint_min(num, den)
    if mins:
        neg = tuple(sorted((v, -e) for v, e in mins.items()))
        num, den = num.shift(neg), den.shift(neg)

    # (3) jointly coprime integer coefficients; done before gcd so flint gets integers
    num, den = _clear_content(num, den)

    # (2) polynomial gcd
    if not coprime and len(num) > 1 and len(den) > 1:
        num, den = _flint.cancel(num, den)
        num, den = _clear_content(num, den)

    # (4) sign
    if den.leading_term()[1] < 0:
        num, den = -num, -den
    return num, den


def _joint_min(num: LaurentPoly, den: LaurentPoly) -> dict:
    a, b = num.min_exponents(), den.min_exponents()
    out = {}
    for v in set(a) | set(b):
        e = min(a.get(v, 0), b.get(v, 0))
        if e:
            out[v] = e
    return out


def _clear_content(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    g1, l1 = num.integer_content()
    g2, l2 = den.integer_content()
    l = lcm(l1, l2)
    g = gcd(g1 * (l // l1), g2 * (l // l2))
    factor = Fraction(l, g)
    if factor != 1:
        num, den = num.scale(factor), den.scale(factor)
    return num, den


class RatFunc:
    """Immutable rational function in normal form."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: LaurentPoly | Scalar = 0, den: LaurentPoly | Scalar = 1, *, _coprime: bool = False):
        if not isinstance(num, LaurentPoly):
            num = LaurentPoly.constant(num)
        if not isinstance(den, LaurentPoly):
            den = LaurentPoly.constant(den)
        self.num, self.den = _normal_form(num, den, _coprime)
        self._hash: int | None = None

    @classmethod
    def var(cls, v: Any) -> RatFunc:
        return cls(LaurentPoly.var(v))

    @classmethod
    def from_laurent(cls, p: LaurentPoly) -> RatFunc:
        return cls(p)

    # -- inspection -----------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> Fraction:
        return Fraction(self.num.constant_value()) / Fraction(self.den.constant_value())

    def is_laurent(self) -> bool:
        return self.den.is_monomial()

    def to_laurent(self) -> LaurentPoly:
        if not self.den.is_monomial():
            raise ValueError("denominator is not a monomial")
        (m, c), = self.den.terms.items()
        inv = tuple((v, -e) for v, e in m)
        return self.num.shift(inv).scale(Fraction(1) / c)

    def variables(self) -> set:
        return self.num.variables() | self.den.variables()

    def size(self) -> int:
        return len(self.num) + len(self.den)

    # -- field arithmetic -------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RatFunc(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __neg__(self) -> RatFunc:
        out = RatFunc.__new__(RatFunc)
        out.num, out.den, out._hash = -self.num, self.den, None
        return out

    def __add__(self, other: RatFunc | Scalar) -> RatFunc:
        other = _coerce(other)
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other: RatFunc | Scalar) -> RatFunc:
        return self + (-_coerce(other))

    def __rsub__(self, other: Scalar) -> RatFunc:
        return _coerce(other) - self

    def __mul__(self, other: RatFunc | Scalar) -> RatFunc:
        other = _coerce(other)
        if self.is_zero() or other.is_zero():
            return RatFunc()
        # cross-cancel first so the products stay small
        n1, d2 = _reduce_pair(self.num, other.den)
        n2, d1 = _reduce_pair(other.num, self.den)
        return RatFunc(n1 * n2, d1 * d2, _coprime=True)

    __rmul__ = __mul__

    def inverse(self) -> RatFunc:
        if self.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.den, self.num, _coprime=True)

    def __truediv__(self, other: RatFunc | Scalar) -> RatFunc:
        return self * _coerce(other).inverse()

    def __rtruediv__(self, other: Scalar) -> RatFunc:
        return _coerce(other) * self.inverse()

    def __pow__(self, k: int) -> RatFunc:
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            return RatFunc(1)
        return RatFunc(self.num**k, self.den**k, _coprime=True)

    # -- rendering --------------------------------------------------------

    def render(self) -> str:
        num = self.num.render()
        if self.den == 1:
            return num
        if len(self.num) > 1:
            num = f"({num})"
        den = self.den.render()
        if not _bare_power(self.den):
            den = f"({den})"
        return f"{num}/{den}"

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"RatFunc({self.render()!r})"


def _bare_power(p: LaurentPoly) -> bool:
    if len(p) != 1:
        return False
    (m, c), = p.terms.items()
    if not m:
        return True
    return c == 1 and len(m) == 1


def _reduce_pair(a: LaurentPoly, b: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Cancel gcd(a, b) when both are multi-term integer polynomials."""
    if len(a) > 1 and len(b) > 1 and a.integer_content()[1] == 1 and b.integer_content()[1] == 1:
        return _flint.cancel(a, b)
    return a, b


def _coerce(x: RatFunc | Scalar) -> RatFunc:
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, (int, Fraction)):
        return RatFunc(x)
    if isinstance(x, LaurentPoly):
        return RatFunc(x)
    raise TypeError(f"cannot use {type(x).__name__} as a rational function")


def const(c: Scalar) -> RatFunc:
    return RatFunc(c)


# -- substitution ---------------------------------------------------------

_FACTOR_CACHE: dict[RatFunc, _flint.FactoredImage] = {}


def factored(image: RatFunc) -> _flint.FactoredImage:
    got = _FACTOR_CACHE.get(image)
    if got is None:
        if len(_FACTOR_CACHE) > 50_000:
            _FACTOR_CACHE.clear()
        got = _flint.FactoredImage.of(image.num, image.den)
        _FACTOR_CACHE[image] = got
    return got


def substitute(a: RatFunc, sigma: Mapping[Any, RatFunc]) -> RatFunc:
    """Apply the homomorphism fixing every variable not listed in sigma."""
    active = {}
    for v in a.variables():
        img = sigma.get(v)
        if img is None:
            continue
        if img.is_zero():
            raise SubstitutionError(f"image of {v} is zero")
        if img.num.is_monomial() and img.den == 1 and img.num.terms.get(((v, 1),)) == 1:
            continue
        active[v] = factored(img)
    if not active:
        return a
    try:
        num, den = _flint.substitute(a.num, a.den, active)
    except ZeroDivisionError as exc:
        raise SubstitutionError(str(exc)) from None
    return RatFunc(num, den, _coprime=True)


def rename(a: RatFunc, fn: Callable[[Any], Any], injective: bool = False) -> RatFunc:
    """Substitute variables by variables.

    An injective renaming keeps num and den coprime, so the gcd step is
    skipped; a collapsing one (such as reduction of indices) may not.
    """
    return RatFunc(a.num.rename(fn), a.den.rename(fn), _coprime=injective)


# -- evaluation and equality ------------------------------------------------


def eval_at(a: RatFunc, point: Mapping[Any, Scalar]) -> Fraction:
    missing = a.variables() - set(point)
    if missing:
        raise KeyError(f"no value for {sorted(missing)}")
    den = a.den.evaluate(point)
    if den == 0:
        raise SingularPointError(f"denominator of {a} vanishes at the given point")
    return a.num.evaluate(point) / den


def eval_mod(a: RatFunc, point: Mapping[Any, int], prime: int) -> int:
    den = a.den.evaluate_mod(point, prime)
    if den == 0:
        raise SingularPointError("denominator vanishes modulo the prime")
    return a.num.evaluate_mod(point, prime) * pow(den, -1, prime) % prime


def random_point(variables, rng: random.Random, hi: int = SAMPLE_HI) -> dict:
    return {v: rng.randint(1, hi) for v in sorted(variables)}


def equals(
    a: RatFunc,
    b: RatFunc,
    mode: str = "exact",
    *,
    seed: int = 0,
    trials: int = 16,
) -> bool:
    """Decide a == b.

    ``exact`` cross-multiplies.  ``randomized`` evaluates both sides at
    ``trials`` integer points in [1, 2**31]; a False answer is always correct,
    a True answer is wrong with probability at most (total degree / 2**31)
    per trial.
    """
    a, b = _coerce(a), _coerce(b)
    if mode == "exact":
        return a.num * b.den == b.num * a.den
    if mode != "randomized":
        raise ValueError(f"unknown equality mode {mode!r}")
    rng = random.Random(seed)
    variables = a.variables() | b.variables()
    done = 0
    singular = 0
    while done < trials:
        point = random_point(variables, rng)
        try:
            va, vb = eval_at(a, point), eval_at(b, point)
        except SingularPointError:
            singular += 1
            if singular >= MAX_SINGULAR_RESAMPLES:
                raise RuntimeError("too many consecutive singular sample points") from None
            continue
        singular = 0
        if va != vb:
            return False
        done += 1
    return True
