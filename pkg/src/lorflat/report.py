"""Check reports shared by every verification routine."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .linalg import Matrix, fmt_rational


class PreconditionError(ValueError):
    """An operation was called on input outside its domain.

    ``report`` carries the failing checks when they are available.
    """

    def __init__(self, message: str, report: "CheckReport | None" = None):
        super().__init__(message)
        self.report = report


def to_jsonable(value: Any) -> Any:
    """Recursively turn Fractions, Matrices and tuples into JSON-friendly data."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, Fraction):
        return fmt_rational(value)
    if isinstance(value, int):
        return value
    if isinstance(value, Matrix):
        return [[fmt_rational(a) for a in r] for r in value]
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    return value


@dataclass(frozen=True)
class Witness:
    """Where a check failed and by how much.

    ``location`` names the basis indices (or other coordinates) of the failing
    instance; ``residual`` is the nonzero quantity that should have vanished.
    """

    location: dict
    residual: Any = None

    def to_dict(self) -> dict:
        return {"location": to_jsonable(self.location), "residual": to_jsonable(self.residual)}

    @classmethod
    def from_dict(cls, d: dict) -> "Witness":
        return cls(location=d["location"], residual=d.get("residual"))


@dataclass
class Check:
    name: str
    passed: bool
    witnesses: list = field(default_factory=list)
    note: str = ""

    def to_dict(self) -> dict:
        d: dict = {"name": self.name, "passed": self.passed}
        if self.witnesses:
            d["witnesses"] = [w.to_dict() for w in self.witnesses]
        if self.note:
            d["note"] = self.note
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Check":
        return cls(
            name=d["name"],
            passed=d["passed"],
            witnesses=[Witness.from_dict(w) for w in d.get("witnesses", [])],
            note=d.get("note", ""),
        )


@dataclass
class CheckReport:
    """Named checks plus summary flags and optional auxiliary data."""

    checks: list = field(default_factory=list)
    flags: dict = field(default_factory=dict)
    data: dict = field(default_factory=dict)

    def add(self, name: str, passed: bool, witnesses=None, note: str = "") -> Check:
        c = Check(name, bool(passed), list(witnesses or []), note)
        self.checks.append(c)
        return c

    def extend(self, other: "CheckReport", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, list(c.witnesses), c.note))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self) -> bool:
        return self.passed

    def get(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "flags": dict(sorted(self.flags.items())),
            "checks": [c.to_dict() for c in self.checks],
            "data": to_jsonable(self.data),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CheckReport":
        return cls(
            checks=[Check.from_dict(c) for c in d.get("checks", [])],
            flags=dict(d.get("flags", {})),
            data=d.get("data", {}),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False, ensure_ascii=False)

    def to_text(self) -> str:
        lines = []
        for c in self.checks:
            lines.append(f"[{'PASS' if c.passed else 'FAIL'}] {c.name}" + (f"  ({c.note})" if c.note else ""))
            for w in c.witnesses[:3]:
                lines.append(f"    at {json.dumps(to_jsonable(w.location), ensure_ascii=False)}"
                             f" residual {json.dumps(to_jsonable(w.residual), ensure_ascii=False)}")
            if len(c.witnesses) > 3:
                lines.append(f"    ... {len(c.witnesses) - 3} more")
        if self.flags:
            lines.append("flags: " + ", ".join(f"{k}={'yes' if v else 'no'}" for k, v in sorted(self.flags.items())))
        lines.append("result: " + ("PASS" if self.passed else "FAIL"))
        return "\n".join(lines) + "\n"
