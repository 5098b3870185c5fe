"""Verification reports: a list of named equalities with both sides recorded."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


def _jsonable(x):
    if isinstance(x, complex):
        return {"re": x.real, "im": x.imag}
    if isinstance(x, (list, tuple)):
        return [_jsonable(y) for y in x]
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (int, float, str, bool)) or x is None:
        return x
    return str(x)


@dataclass(frozen=True)
class Check:
    name: str
    lhs: Any
    rhs: Any
    passed: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "lhs": _jsonable(self.lhs), "rhs": _jsonable(self.rhs),
                "passed": self.passed, "detail": self.detail}


@dataclass
class Report:
    title: str
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def add(self, name, lhs, rhs, passed, detail="") -> bool:
        self.checks.append(Check(name, lhs, rhs, bool(passed), detail))
        return bool(passed)

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.lhs, c.rhs, c.passed, c.detail))
        self.notes.extend(other.notes)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {"title": self.title, "passed": self.passed,
                "checks": [c.to_dict() for c in self.checks], "notes": list(self.notes)}
