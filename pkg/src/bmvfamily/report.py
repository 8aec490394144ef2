"""Structured pass/fail checks and the report envelope emitted by the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any


def to_jsonable(value: Any) -> Any:
    """Convert exact values into JSON-ready data (rationals become "p/q")."""
    if hasattr(value, "to_json"):
        return value.to_json()
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, (list, tuple, set, frozenset)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    return value


@dataclass(frozen=True)
class Check:
    name: str
    expected: Any
    actual: Any
    passed: bool

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "expected": to_jsonable(self.expected),
            "actual": to_jsonable(self.actual),
            "pass": self.passed,
        }


def check(name: str, expected: Any, actual: Any) -> Check:
    """Exact-equality check."""
    return Check(name, expected, actual, bool(expected == actual))


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def sign_check(name: str, expected_sign: int, value) -> Check:
    return Check(name, expected_sign, _sign(value), _sign(value) == expected_sign)


@dataclass
class Report:
    command: str
    inputs: dict[str, Any] = field(default_factory=dict)
    results: dict[str, Any] = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def extend(self, checks) -> None:
        self.checks.extend(checks)

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "inputs": to_jsonable(self.inputs),
            "results": to_jsonable(self.results),
            "checks": [c.to_json() for c in self.checks],
            "ok": self.ok,
        }
