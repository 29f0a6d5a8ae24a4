"""Generator symbols shared by the algebra engine and the ring constructors."""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import IntEnum


class Role(IntEnum):
    Y = 0  # periodic y_i(t)
    F = 1  # abstract f_i(t) standing in for F_i(t)
    YTILDE = 2  # infinite-ring y~_i(n)


_PREFIX = {Role.Y: "y", Role.F: "f", Role.YTILDE: "yt"}
_BY_PREFIX = {v: k for k, v in _PREFIX.items()}
_NAME_RE = re.compile(r"^\s*(yt|y|f)\[\s*(-?\d+)\s*,\s*(-?\d+)\s*\]\s*$")


@dataclass(frozen=True, order=True)
class VarId:
    """A generator: role, node index (1-based) and time index in d-units.

    Ordering is (role, node, time); the monomial order of the engine is built
    on top of it.
    """

    role: Role
    node: int
    time: int

    def __str__(self) -> str:
        return f"{_PREFIX[self.role]}[{self.node},{self.time}]"

    __repr__ = __str__

    @classmethod
    def parse(cls, text: str) -> VarId:
        match = _NAME_RE.match(text)
        if match is None:
            raise ValueError(f"not a variable name: {text!r}")
        prefix, node, time = match.groups()
        return cls(_BY_PREFIX[prefix], int(node), int(time))


def y(i: int, t: int) -> VarId:
    return VarId(Role.Y, i, t)


def f(i: int, t: int) -> VarId:
    return VarId(Role.F, i, t)


def yt(i: int, n: int) -> VarId:
    return VarId(Role.YTILDE, i, n)
