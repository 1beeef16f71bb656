"""Check records and reports shared by every audit."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable

SCHEMA_VERSION = 1


class Verdict(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    UNKNOWN = "unknown"


@dataclass
class Check:
    name: str
    verdict: Verdict
    witness: str | None = None
    fuel: int = 0

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.PASS

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "verdict": self.verdict.value,
            "witness": self.witness,
            "fuel": self.fuel,
        }


def check(name: str, ok: bool, witness: str | None = None, fuel: int = 0) -> Check:
    return Check(name, Verdict.PASS if ok else Verdict.FAIL, witness, fuel)


def combine(verdicts: Iterable[Verdict]) -> Verdict:
    """fail beats unknown beats pass; an empty collection passes."""
    verdicts = list(verdicts)
    if Verdict.FAIL in verdicts:
        return Verdict.FAIL
    if Verdict.UNKNOWN in verdicts:
        return Verdict.UNKNOWN
    return Verdict.PASS


@dataclass
class Report:
    command: str
    checks: list[Check] = field(default_factory=list)
    params: dict = field(default_factory=dict)
    seed: int | None = None

    def add(self, c: Check) -> Check:
        self.checks.append(c)
        return c

    def extend(self, cs: Iterable[Check]) -> None:
        self.checks.extend(cs)

    @property
    def overall(self) -> Verdict:
        return combine(c.verdict for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.verdict is Verdict.FAIL]

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "seed": self.seed,
            "params": dict(sorted(self.params.items())),
            "checks": [c.to_dict() for c in self.checks],
            "overall": self.overall.value,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_text(self) -> str:
        lines = [f"# {self.command} (seed={self.seed})"]
        for c in self.checks:
            line = f"{c.verdict.value:7} {c.name}"
            if c.witness:
                line += f"  [{c.witness}]"
            lines.append(line)
        lines.append(f"overall: {self.overall.value}")
        return "\n".join(lines) + "\n"


def emit_report(report: Report, path, fmt: str = "structured") -> None:
    text = report.to_json() if fmt == "structured" else report.to_text()
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
