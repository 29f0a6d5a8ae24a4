"""Structured verification outcomes."""

from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any, Iterator, Optional

from ..exactalg import RatFunc, equals
from ..ymring import Context

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


@dataclass(frozen=True)
class EqConfig:
    """How equalities are decided: ``exact`` or ``randomized`` with seed/trials."""

    mode: str = "exact"
    seed: int = 0
    trials: int = 16

    def __post_init__(self) -> None:
        if self.mode not in ("exact", "randomized"):
            raise ValueError(f"unknown equality mode {self.mode!r}")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")

    def describe(self) -> dict:
        out: dict[str, Any] = {"equality": self.mode}
        if self.mode == "randomized":
            out["seed"] = self.seed
            out["trials"] = self.trials
        return out

    def same(self, a: RatFunc, b: RatFunc) -> bool:
        return equals(a, b, self.mode, seed=self.seed, trials=self.trials)


EXACT = EqConfig()


@dataclass
class Report:
    check: str
    instance: dict
    status: str
    witness: Optional[dict] = None
    elapsed_ms: int = 0

    def __post_init__(self) -> None:
        if self.status == FAIL and not self.witness:
            raise ValueError("a failing report needs a witness")
        if self.status == PASS and self.witness:
            raise ValueError("a passing report carries no witness")

    @property
    def ok(self) -> bool:
        return self.status != FAIL

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "instance": self.instance,
            "status": self.status,
            "witness": self.witness,
            "elapsed_ms": self.elapsed_ms,
        }

    def line(self) -> str:
        inst = " ".join(f"{k}={v}" for k, v in self.instance.items())
        out = f"{self.status.upper():7s} {self.check} [{inst}] {self.elapsed_ms}ms"
        if self.witness:
            out += "  witness: " + "; ".join(f"{k}={v}" for k, v in self.witness.items())
        return out

    def sort_key(self) -> tuple:
        """Check name, then instance fields; integers compare numerically."""

        def field_key(v: Any) -> tuple:
            if isinstance(v, int) and not isinstance(v, bool):
                return (0, v, "")
            return (1, 0, str(v))

        return (self.check, sorted((k, field_key(v)) for k, v in self.instance.items()))


def instance(ctx: Context, eq: EqConfig, **extra: Any) -> dict:
    out = ctx.describe()
    out.update({k: v for k, v in extra.items() if v is not None})
    out.update(eq.describe())
    return out


@dataclass
class _Clock:
    start: float = field(default_factory=time.perf_counter)

    def ms(self) -> int:
        return int(round((time.perf_counter() - self.start) * 1000))


@contextmanager
def clock() -> Iterator[_Clock]:
    yield _Clock()


def compare(
    check: str,
    inst: dict,
    lhs: RatFunc,
    rhs: RatFunc,
    eq: EqConfig,
    started: _Clock,
    where: Optional[str] = None,
) -> Report:
    if eq.same(lhs, rhs):
        return Report(check, inst, PASS, None, started.ms())
    witness = {"lhs": lhs.render(), "rhs": rhs.render()}
    if where is not None:
        witness = {"at": where, **witness}
    return Report(check, inst, FAIL, witness, started.ms())


def skipped(check: str, inst: dict, reason: str) -> Report:
    return Report(check, {**inst, "note": reason}, SKIPPED, None, 0)
