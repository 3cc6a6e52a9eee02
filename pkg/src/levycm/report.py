"""Structured pass/fail reports for invariant and verification suites."""

from __future__ import annotations

import math
from dataclasses import dataclass, field


@dataclass
class Check:
    """One verified condition.

    ``margin`` is signed headroom: nonnegative means the condition holds with
    that much slack (in the check's own units), negative means it is violated
    by that amount.
    """

    name: str
    passed: bool
    margin: float
    witness: dict | None = None


@dataclass
class VerifyReport:
    suite: str
    checks: list[Check] = field(default_factory=list)

    def add(self, name, margin, witness=None, tol=0.0):
        """Record a check; it passes when margin >= -tol."""
        margin = float(margin)
        ok = bool(margin >= -tol) and math.isfinite(margin)
        self.checks.append(Check(name, ok, margin, witness))
        return ok

    def extend(self, other: "VerifyReport"):
        self.checks.extend(other.checks)

    @property
    def n_checks(self):
        return len(self.checks)

    @property
    def n_failures(self):
        return sum(1 for c in self.checks if not c.passed)

    @property
    def passed(self):
        return self.n_failures == 0

    @property
    def worst_margin(self):
        if not self.checks:
            return math.inf
        return min(c.margin for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def to_dict(self):
        witnesses = [
            {"name": c.name, "margin": c.margin, **(c.witness or {})}
            for c in self.checks
            if not c.passed
        ]
        return {
            "suite": self.suite,
            "n_checks": self.n_checks,
            "n_failures": self.n_failures,
            "worst_margin": self.worst_margin,
            "witnesses": witnesses,
        }

    def summary(self):
        status = "PASS" if self.passed else "FAIL"
        return (
            f"[{status}] suite={self.suite} checks={self.n_checks} "
            f"failures={self.n_failures} worst_margin={self.worst_margin:.3e}"
        )
