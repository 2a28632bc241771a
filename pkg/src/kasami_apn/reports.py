"""Uniform pass/fail record emitted by every verification sweep."""
from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field

from .gf2n import to_hex

MAX_COUNTEREXAMPLES = 32


@dataclass
class CheckReport:
    op: str
    n: int
    k: int | None
    passed: bool = True
    counterexamples: list[int] = field(default_factory=list)
    elapsed_ms: int = 0
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.passed

    def fail(self, *xs: int) -> None:
        self.passed = False
        room = MAX_COUNTEREXAMPLES - len(self.counterexamples)
        self.counterexamples.extend(int(x) for x in xs[:max(room, 0)])

    def to_dict(self, stable: bool = False) -> dict:
        d = {
            "op": self.op,
            "n": self.n,
            "k": self.k,
            "pass": self.passed,
            "counterexamples": [to_hex(x) for x in self.counterexamples],
        }
        if not stable:
            d["elapsed_ms"] = self.elapsed_ms
        if self.details:
            d["details"] = self.details
        return d


@contextmanager
def timed(report: CheckReport):
    t0 = time.perf_counter()
    try:
        yield report
    finally:
        report.elapsed_ms = int((time.perf_counter() - t0) * 1000)
