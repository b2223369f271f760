"""Uniform check-report rows for the verification suites.

Every inequality check becomes one row ``{check, lhs, rhs, slack, pass}``
with ``slack = rhs - lhs``; a row fails when the slack is more negative than
the tolerance the suite ran with.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass


@dataclass
class Check:
    check: str
    lhs: float
    rhs: float
    slack: float
    passed: bool

    @classmethod
    def leq(cls, name: str, lhs: float, rhs: float, tol: float) -> "Check":
        """Row for an inequality lhs <= rhs, allowing slack down to -tol."""
        slack = rhs - lhs
        return cls(name, float(lhs), float(rhs), float(slack), slack >= -tol)

    @classmethod
    def close(cls, name: str, lhs: float, rhs: float, tol: float) -> "Check":
        """Row for an equality |lhs - rhs| <= tol; slack is the deviation."""
        dev = abs(lhs - rhs)
        return cls(name, float(lhs), float(rhs), float(-dev), dev <= tol)


def to_json(checks: list[Check]) -> str:
    rows = []
    for c in checks:
        d = asdict(c)
        d["pass"] = d.pop("passed")
        rows.append(d)
    return json.dumps(rows, indent=2, sort_keys=True)


def all_passed(checks: list[Check]) -> bool:
    return all(c.passed for c in checks)


def failures(checks: list[Check]) -> list[Check]:
    return [c for c in checks if not c.passed]
