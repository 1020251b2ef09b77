"""Machine-readable verification records."""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction

STATUSES = ("pass", "fail", "skipped")


def jsonable(x):
    """Convert witnesses into plain JSON values (tuples to lists, fractions to strings)."""
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else str(x)
    if isinstance(x, float):
        if math.isinf(x):
            return "-inf" if x < 0 else "inf"
        return x
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    return str(x)


@dataclass
class VerificationReport:
    check: str
    b: int | None
    field: str
    seed: int | None
    status: str = "pass"
    witnesses: dict = field(default_factory=dict)
    wall_ms: int = 0
    failures: list = field(default_factory=list)

    def __post_init__(self):
        self._t0 = time.perf_counter()

    def record(self, name: str, ok: bool, value=None):
        """One sub-assertion; the report passes only if every one does."""
        self.witnesses[name] = {"ok": bool(ok), "value": jsonable(value)}
        if not ok:
            self.failures.append(name)
            self.status = "fail"
        return ok

    def note(self, name: str, value):
        self.witnesses[name] = jsonable(value)

    def skip(self, reason: str):
        self.status = "skipped"
        self.witnesses["skipped"] = reason

    def finish(self) -> "VerificationReport":
        self.wall_ms = int((time.perf_counter() - self._t0) * 1000)
        return self

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "b": self.b,
            "field": self.field,
            "seed": self.seed,
            "status": self.status,
            "witnesses": self.witnesses,
            "wall_ms": self.wall_ms,
        }

    def to_json(self, indent=None) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    def summary(self) -> str:
        line = f"{self.check}: {self.status} ({self.wall_ms} ms)"
        if self.failures:
            line += " failed: " + ", ".join(self.failures)
        return line
