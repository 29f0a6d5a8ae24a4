"""JSON form of RatFunc.

``{"num": [term, ...], "den": [term, ...]}`` with
``term = {"c": "p/q", "m": {"y[i,t]": exp, ...}}`` and terms in descending
graded-lex order.  Coefficients are always written as ``p/q``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Callable

from .laurent import LaurentPoly
from .ratfunc import RatFunc


def _terms(p: LaurentPoly) -> list[dict]:
    out = []
    for m, c in p:
        c = Fraction(c)
        out.append({"c": f"{c.numerator}/{c.denominator}", "m": {str(v): e for v, e in m}})
    return out


def ratfunc_to_json(a: RatFunc) -> dict:
    return {"num": _terms(a.num), "den": _terms(a.den)}


def _poly(rows: list[dict], parse_var: Callable[[str], Any]) -> LaurentPoly:
    terms: dict = {}
    for row in rows:
        mono = tuple(sorted((parse_var(name), int(e)) for name, e in row["m"].items()))
        terms[mono] = terms.get(mono, 0) + Fraction(row["c"])
    return LaurentPoly(terms)


def ratfunc_from_json(data: dict, parse_var: Callable[[str], Any]) -> RatFunc:
    return RatFunc(_poly(data["num"], parse_var), _poly(data["den"], parse_var))
