"""Check records shared by all verification suites."""

from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field


@dataclass
class Check:
    suite: str
    id: str
    anchor: str
    passed: bool
    residual: str = "0"
    detail: str = ""
    laurent: dict = None
    seconds: float = 0.0

    def as_dict(self) -> dict:
        d = asdict(self)
        if d["laurent"] is None:
            del d["laurent"]
        return d


@dataclass
class Report:
    suite: str
    checks: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    def add(self, id: str, anchor: str, passed: bool, residual="0", detail="", laurent=None,
            seconds=0.0) -> Check:
        c = Check(self.suite, id, anchor, bool(passed), str(residual), detail, laurent, seconds)
        self.checks.append(c)
        return c

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def extend(self, other: "Report"):
        self.checks.extend(other.checks)
        self.notes.update(other.notes)

    def __iter__(self):
        return iter(self.checks)

    def __len__(self):
        return len(self.checks)

    def summary(self) -> str:
        bad = self.failures()
        return f"{self.suite}: {len(self.checks) - len(bad)}/{len(self.checks)} passed"


@contextmanager
def timed():
    box = [0.0]
    t0 = time.perf_counter()
    try:
        yield box
    finally:
        box[0] = time.perf_counter() - t0
