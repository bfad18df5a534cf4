"""Machine-readable verification reports."""

from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field


@dataclass
class CheckResult:
    name: str
    status: str  # pass | fail | error
    values: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == "pass"


@dataclass
class VerificationReport:
    instance: str
    checks: list[CheckResult] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @contextmanager
    def check(self, name: str):
        """Run a block as a named check; it fails on AssertionError."""
        rec = CheckResult(name, "error")
        start = time.perf_counter()
        values: dict = {}
        try:
            yield values
        except AssertionError as exc:
            rec.status = "fail"
            values.setdefault("reason", str(exc) or "assertion failed")
        else:
            rec.status = "pass"
        finally:
            rec.values = values
            rec.seconds = time.perf_counter() - start
            self.checks.append(rec)

    def add_note(self, text: str):
        self.notes.append(text)

    def to_json(self) -> dict:
        return {
            "instance": self.instance,
            "passed": self.passed,
            "checks": [
                {
                    "name": c.name,
                    "status": c.status,
                    "values": _jsonable(c.values),
                    "seconds": round(c.seconds, 6),
                }
                for c in self.checks
            ],
            "notes": list(self.notes),
        }

    def to_text(self) -> str:
        lines = [f"instance: {self.instance}"]
        width = max((len(c.name) for c in self.checks), default=0)
        for c in self.checks:
            summary = ", ".join(f"{k}={v}" for k, v in _jsonable(c.values).items())
            lines.append(
                f"  [{c.status.upper():>4}] {c.name.ljust(width)}"
                + (f"  {summary}" if summary else "")
            )
        for note in self.notes:
            lines.append(f"  note: {note}")
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)


def _jsonable(values: dict) -> dict:
    out = {}
    for k, v in values.items():
        if hasattr(v, "tolist"):
            v = v.tolist()
        elif isinstance(v, (list, tuple)):
            v = [x.tolist() if hasattr(x, "tolist") else x for x in v]
        elif hasattr(v, "item"):
            v = v.item()
        out[k] = v
    return out
