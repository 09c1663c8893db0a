"""Check records and the aggregate certificate shared by the builders."""

from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any, Iterator

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


@dataclass
class CheckResult:
    name: str
    status: str
    leg: str = "symbolic"
    reason: str | None = None
    value: Any = None
    witness: Any = None
    elapsed_ms: float = 0.0
    bad_locus_size: int | None = None
    seed: int | None = None

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "leg": self.leg,
            "result": self.status,
            "reason": self.reason,
            "value": self.value,
            "witness": self.witness,
            "elapsed_ms": round(self.elapsed_ms, 3),
            "bad_locus_size": self.bad_locus_size,
            "seed": self.seed,
        }


@dataclass
class MainBuildCertificate:
    curve: Any
    checks: dict[str, CheckResult] = field(default_factory=dict)
    witnesses: dict[str, Any] = field(default_factory=dict)

    def add(self, check: CheckResult) -> CheckResult:
        self.checks[check.name] = check
        return check

    @property
    def failures(self) -> list[str]:
        return [k for k, c in self.checks.items() if c.status == FAIL]

    @property
    def verdict(self) -> str:
        ran = [c for c in self.checks.values() if c.status != SKIPPED]
        if not ran or self.failures:
            return FAIL
        return PASS

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def __getitem__(self, name: str) -> CheckResult:
        return self.checks[name]


@contextmanager
def timed() -> Iterator[dict[str, float]]:
    box = {"ms": 0.0}
    t0 = time.perf_counter()
    try:
        yield box
    finally:
        box["ms"] = (time.perf_counter() - t0) * 1000.0
