"""Structured results shared by every checker and suite."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Callable, Optional


@dataclass
class Counterexample:
    input: Any
    step: str
    expected: str
    search_bound: Optional[int] = None
    # raw states along the premise path, plus the relation label of each step
    trace: tuple = ()
    relations: tuple = ()

    def to_json(self, show: Callable[[Any], str] = str) -> dict:
        return {
            "input": show(self.input),
            "step": self.step,
            "expected": self.expected,
            "search_bound": self.search_bound,
            "trace": [show(s) for s in self.trace],
        }


@dataclass
class Report:
    suite: str
    params: dict = field(default_factory=dict)
    closed: int = 0
    failed: int = 0
    skipped: int = 0
    counterexamples: list[Counterexample] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    seconds: float = 0.0
    max_counterexamples: int = 20
    # per-part counts for reports assembled with ``absorb``
    parts: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def close(self, n: int = 1) -> None:
        self.closed += n

    def skip(self, n: int = 1) -> None:
        self.skipped += n

    def fail(self, cex: Counterexample) -> None:
        self.failed += 1
        if len(self.counterexamples) < self.max_counterexamples:
            self.counterexamples.append(cex)

    def absorb(self, other: "Report", prefix: str = "") -> "Report":
        self.closed += other.closed
        self.failed += other.failed
        self.skipped += other.skipped
        for c in other.counterexamples:
            if len(self.counterexamples) < self.max_counterexamples:
                if prefix:
                    c = Counterexample(c.input, f"{prefix}: {c.step}", c.expected,
                                       c.search_bound, c.trace, c.relations)
                self.counterexamples.append(c)
        self.notes.extend(f"{prefix}: {n}" if prefix else n for n in other.notes)
        if prefix:
            self.parts[prefix] = other.counts()
        return self

    def counts(self) -> dict:
        return {"closed": self.closed, "failed": self.failed, "skipped": self.skipped}

    def to_json(self, show: Callable[[Any], str] = str) -> dict:
        return {
            "suite": self.suite,
            "params": self.params,
            "counts": self.counts(),
            "parts": self.parts,
            "counterexamples": [c.to_json(show) for c in self.counterexamples],
            "notes": self.notes,
            "seconds": round(self.seconds, 3),
        }

    def dumps(self, show: Callable[[Any], str] = str) -> str:
        return json.dumps(self.to_json(show), indent=2, ensure_ascii=False)

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        line = (f"[{status}] {self.suite}: closed={self.closed} failed={self.failed} "
                f"skipped={self.skipped} ({self.seconds:.2f}s)")
        if self.skipped:
            line += "  <-- skipped/unknown verdicts present"
        return line
