"""Sparse multivariate Laurent polynomials with exact rational coefficients.

A monomial is a tuple of ``(var, exponent)`` pairs sorted by variable with no
zero exponents; the empty tuple is the unit monomial.  Variables only need to
be hashable, totally ordered and printable (in practice :class:`VarId`).

Terms are ordered graded-lexicographically: total degree first, then the
exponent of the smallest variable decides, so ``y[1,0]^2 > y[1,0]*y[1,1] >
y[1,1]^2``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key
from math import gcd, lcm
from typing import Any, Iterable, Iterator, Mapping, Union

Monomial = tuple  # tuple[tuple[var, int], ...]
Coeff = Union[int, Fraction]

ONE_MONO: Monomial = ()

# above this many term products, multiplication is handed to flint
FLINT_MUL_THRESHOLD = 600


def _norm_coeff(c: Coeff) -> Coeff:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = dict(a)
    for v, e in b:
        s = out.get(v, 0) + e
        if s:
            out[v] = s
        else:
            del out[v]
    return tuple(sorted(out.items()))


def mono_pow(a: Monomial, k: int) -> Monomial:
    if k == 0:
        return ONE_MONO
    return tuple((v, e * k) for v, e in a)


def mono_degree(a: Monomial) -> int:
    return sum(e for _, e in a)


def mono_cmp(a: Monomial, b: Monomial) -> int:
    """Graded-lex comparison: negative if a < b, zero if equal, positive if a > b."""
    da, db = mono_degree(a), mono_degree(b)
    if da != db:
        return -1 if da < db else 1
    i = j = 0
    while i < len(a) or j < len(b):
        va = a[i][0] if i < len(a) else None
        vb = b[j][0] if j < len(b) else None
        if vb is None or (va is not None and va < vb):
            ea, eb = a[i][1], 0
            i += 1
        elif va is None or vb < va:
            ea, eb = 0, b[j][1]
            j += 1
        else:
            ea, eb = a[i][1], b[j][1]
            i += 1
            j += 1
        if ea != eb:
            return -1 if ea < eb else 1
    return 0


mono_key = cmp_to_key(mono_cmp)


def format_coeff(c: Coeff) -> str:
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def format_mono(m: Monomial) -> str:
    parts = []
    for v, e in m:
        parts.append(str(v) if e == 1 else f"{v}^{e}")
    return "*".join(parts)


class LaurentPoly:
    """Immutable sparse Laurent polynomial: a map monomial -> nonzero rational."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Coeff] | None = None):
        clean: dict[Monomial, Coeff] = {}
        if terms:
            for m, c in terms.items():
                if c:
                    clean[m] = _norm_coeff(c)
        self._terms = clean
        self._hash: int | None = None

    @classmethod
    def _raw(cls, terms: dict[Monomial, Coeff]) -> LaurentPoly:
        # caller guarantees no zero coefficients
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, c: Coeff) -> LaurentPoly:
        return cls({ONE_MONO: c}) if c else cls()

    @classmethod
    def var(cls, v: Any, exp: int = 1) -> LaurentPoly:
        if exp == 0:
            return cls.constant(1)
        return cls._raw({((v, exp),): 1})

    @classmethod
    def monomial(cls, m: Monomial, c: Coeff = 1) -> LaurentPoly:
        return cls({m: c})

    # -- inspection -----------------------------------------------------

    @property
    def terms(self) -> Mapping[Monomial, Coeff]:
        return self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[tuple[Monomial, Coeff]]:
        """Terms in canonical (descending graded-lex) order."""
        for m in sorted(self._terms, key=mono_key, reverse=True):
            yield m, self._terms[m]

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and ONE_MONO in self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def constant_value(self) -> Coeff:
        if not self.is_constant():
            raise ValueError("not a constant")
        return self._terms.get(ONE_MONO, 0)

    def variables(self) -> set:
        out = set()
        for m in self._terms:
            out.update(v for v, _ in m)
        return out

    def leading_term(self) -> tuple[Monomial, Coeff]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self._terms, key=mono_key)
        return m, self._terms[m]

    def min_exponents(self) -> dict:
        """Per-variable minimum exponent over all terms (absent counts as 0)."""
        return _extreme_exponents(self._terms, min)

    def max_exponents(self) -> dict:
        return _extreme_exponents(self._terms, max)

    def total_degree(self) -> int:
        return max((mono_degree(m) for m in self._terms), default=0)

    def integer_content(self) -> tuple[int, int]:
        """Return (gcd of numerators, lcm of denominators) of the coefficients."""
        g, l = 0, 1
        for c in self._terms.values():
            c = Fraction(c)
            g = gcd(g, c.numerator)
            l = lcm(l, c.denominator)
        return g, l

    # -- arithmetic -----------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == LaurentPoly.constant(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly._raw({m: -c for m, c in self._terms.items()})

    def __add__(self, other: LaurentPoly | Coeff) -> LaurentPoly:
        other = _coerce(other)
        if len(other._terms) > len(self._terms):
            self, other = other, self
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = _norm_coeff(s)
            else:
                out.pop(m, None)
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __sub__(self, other: LaurentPoly | Coeff) -> LaurentPoly:
        return self + (-_coerce(other))

    def __rsub__(self, other: Coeff) -> LaurentPoly:
        return _coerce(other) - self

    def scale(self, c: Coeff) -> LaurentPoly:
        if not c:
            return LaurentPoly()
        c = _norm_coeff(c)
        return LaurentPoly._raw({m: _norm_coeff(k * c) for m, k in self._terms.items()})

    def shift(self, mono: Monomial) -> LaurentPoly:
        """Multiply by a monomial."""
        if not mono:
            return self
        return LaurentPoly._raw({mono_mul(m, mono): c for m, c in self._terms.items()})

    def __mul__(self, other: LaurentPoly | Coeff) -> LaurentPoly:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not self._terms or not other._terms:
            return LaurentPoly()
        if len(self._terms) == 1:
            (m, c), = self._terms.items()
            return other.shift(m).scale(c)
        if len(other._terms) == 1:
            (m, c), = other._terms.items()
            return self.shift(m).scale(c)
        if len(self._terms) * len(other._terms) > FLINT_MUL_THRESHOLD:
            from . import _flint

            return _flint.mul(self, other)
        out: dict[Monomial, Coeff] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return LaurentPoly({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LaurentPoly:
        if k < 0:
            if len(self._terms) != 1:
                raise ValueError("negative power of a non-monomial Laurent polynomial")
            (m, c), = self._terms.items()
            return LaurentPoly({mono_pow(m, k): Fraction(c) ** k})
        result = LaurentPoly.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def diff(self, v: Any) -> LaurentPoly:
        """Partial derivative with respect to v."""
        out: dict[Monomial, Coeff] = {}
        for m, c in self._terms.items():
            for w, e in m:
                if w == v:
                    rest = tuple((u, k) if u != v else (u, k - 1) for u, k in m)
                    out[tuple(p for p in rest if p[1])] = c * e
                    break
        return LaurentPoly(out)

    def rename(self, fn) -> LaurentPoly:
        """Apply a variable map ``fn`` to every monomial (merging collisions)."""
        out: dict[Monomial, Coeff] = {}
        for m, c in self._terms.items():
            acc: dict = {}
            for v, e in m:
                w = fn(v)
                acc[w] = acc.get(w, 0) + e
            key = tuple(sorted((w, e) for w, e in acc.items() if e))
            out[key] = out.get(key, 0) + c
        return LaurentPoly(out)

    def evaluate(self, point: Mapping[Any, Coeff]) -> Fraction:
        cache: dict = {}
        total = Fraction(0)
        for m, c in self._terms.items():
            val = Fraction(c)
            for v, e in m:
                key = (v, e)
                pw = cache.get(key)
                if pw is None:
                    if v not in point:
                        raise KeyError(f"no value assigned to {v}")
                    pw = Fraction(point[v]) ** e
                    cache[key] = pw
                val *= pw
            total += val
        return total

    def evaluate_mod(self, point: Mapping[Any, int], prime: int) -> int:
        """Evaluate modulo a prime; negative exponents use modular inverses."""
        cache: dict = {}
        total = 0
        for m, c in self._terms.items():
            c = Fraction(c)
            val = c.numerator * pow(c.denominator, -1, prime) % prime
            for v, e in m:
                key = (v, e)
                pw = cache.get(key)
                if pw is None:
                    pw = pow(point[v], e, prime)
                    cache[key] = pw
                val = val * pw % prime
            total += val
        return total % prime

    # -- rendering ------------------------------------------------------

    def render(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for idx, (m, c) in enumerate(self):
            neg = c < 0
            a = -c if neg else c
            if not m:
                body = format_coeff(a)
            elif a == 1:
                body = format_mono(m)
            else:
                body = f"{format_coeff(a)}*{format_mono(m)}"
            if idx == 0:
                out.append(f"-{body}" if neg else body)
            else:
                out.append(f" - {body}" if neg else f" + {body}")
        return "".join(out)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"LaurentPoly({self.render()!r})"


def _coerce(x: LaurentPoly | Coeff) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPoly.constant(x)
    raise TypeError(f"cannot use {type(x).__name__} as a Laurent polynomial")


def _extreme_exponents(terms: Iterable[Monomial], pick) -> dict:
    n = 0
    seen: dict = {}
    count: dict = {}
    for m in terms:
        n += 1
        for v, e in m:
            if v in seen:
                seen[v] = pick(seen[v], e)
                count[v] += 1
            else:
                seen[v] = e
                count[v] = 1
    # a variable missing from some term contributes exponent 0 there
    for v, k in count.items():
        if k < n:
            seen[v] = pick(seen[v], 0)
    return {v: e for v, e in seen.items() if e}
