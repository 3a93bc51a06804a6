"""atomech - Verification Gate

Turns a list of numerical checks into a PASS / FAIL decision. Every verify
subcommand funnels its checks through here; FAIL maps to exit code 2.
"""

from __future__ import annotations

import logging
import math
from enum import Enum
from typing import Iterable, Optional

from pydantic import BaseModel, ConfigDict, Field

logger = logging.getLogger(__name__)


class GateDecision(str, Enum):
    """Gate outcome"""
    PASS = "PASS"
    FAIL = "FAIL"


class Check(BaseModel):
    """One measured value against its target.

    With ``relative`` the tolerance is a fraction of |target|; otherwise it is
    an absolute bound on |value - target|. ``upper_bound`` checks only
    value <= target + tolerance.
    """
    model_config = ConfigDict(extra="forbid")

    name: str
    value: float
    target: float
    tolerance: float = Field(..., ge=0)
    relative: bool = True
    upper_bound: bool = False
    note: Optional[str] = None

    @property
    def deviation(self) -> float:
        if self.upper_bound:
            return max(0.0, self.value - self.target)
        return abs(self.value - self.target)

    @property
    def allowed(self) -> float:
        return self.tolerance * abs(self.target) if self.relative else self.tolerance

    @property
    def passed(self) -> bool:
        if not math.isfinite(self.value):
            return False
        return self.deviation <= self.allowed


class GateResult(BaseModel):
    """Gate decision with the checks that produced it"""
    model_config = ConfigDict(extra="forbid")

    decision: GateDecision
    reason: str
    checks: list[Check] = Field(default_factory=list)
    failed_checks: list[str] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.decision == GateDecision.PASS

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 2

    def summary_rows(self) -> list[dict]:
        return [
            {
                "check": c.name,
                "value": c.value,
                "target": c.target,
                "tolerance": c.tolerance,
                "passed": c.passed,
            }
            for c in self.checks
        ]


class VerificationGate:
    """Collects checks and decides.

    An empty gate fails: a verification that checked nothing has not passed.
    """

    def __init__(self, name: str):
        self.name = name
        self._checks: list[Check] = []

    def add(self, check: Check) -> Check:
        self._checks.append(check)
        if not check.passed:
            logger.info("%s: check %s failed (value=%.6g target=%.6g)",
                        self.name, check.name, check.value, check.target)
        return check

    def extend(self, checks: Iterable[Check]) -> None:
        for c in checks:
            self.add(c)

    def evaluate(self) -> GateResult:
        if not self._checks:
            return GateResult(decision=GateDecision.FAIL, reason=f"{self.name}: no checks ran")
        failed = [c.name for c in self._checks if not c.passed]
        if failed:
            return GateResult(
                decision=GateDecision.FAIL,
                reason=f"{self.name}: {len(failed)} of {len(self._checks)} checks failed",
                checks=list(self._checks),
                failed_checks=failed,
            )
        return GateResult(
            decision=GateDecision.PASS,
            reason=f"{self.name}: all {len(self._checks)} checks passed",
            checks=list(self._checks),
        )
