"""Run reports: per-instance records, aggregates, JSON and CSV output.

A record passes iff its deficit is at least -tolerance. Scenarios that check
an equality or a closed-form match store deficit = -|difference| so the same
rule applies uniformly. Serialization is deterministic: two runs with the
same seed and config differ at most in timing_ms.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Any


@dataclass
class ScenarioRecord:
    index: int
    label: str
    inputs: dict[str, Any]
    lhs: float
    rhs: float
    deficit: float
    passed: bool

    def to_dict(self) -> dict[str, Any]:
        return {
            "index": self.index,
            "label": self.label,
            "inputs": self.inputs,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "deficit": self.deficit,
            "pass": self.passed,
        }


@dataclass
class Report:
    scenario: str
    config: dict[str, Any]
    records: list[ScenarioRecord]
    aggregate: dict[str, Any] = field(default_factory=dict)
    timing_ms: float = 0.0

    @property
    def all_passed(self) -> bool:
        return self.aggregate.get("failed", 1) == 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "scenario": self.scenario,
            "config": self.config,
            "records": [r.to_dict() for r in self.records],
            "aggregate": self.aggregate,
            "timing_ms": self.timing_ms,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["scenario", "index", "label", "lhs", "rhs", "deficit", "pass", "inputs"])
        for r in self.records:
            writer.writerow(
                [
                    self.scenario,
                    r.index,
                    r.label,
                    repr(r.lhs),
                    repr(r.rhs),
                    repr(r.deficit),
                    r.passed,
                    json.dumps(r.inputs, separators=(",", ":")),
                ]
            )
        return buf.getvalue()


def make_record(
    index: int,
    label: str,
    inputs: dict[str, Any],
    lhs: float,
    rhs: float,
    deficit: float,
    tolerance: float,
) -> ScenarioRecord:
    return ScenarioRecord(
        index=index,
        label=label,
        inputs=inputs,
        lhs=float(lhs),
        rhs=float(rhs),
        deficit=float(deficit),
        passed=bool(deficit >= -tolerance),
    )


def aggregate_records(records: list[ScenarioRecord], tolerance: float) -> dict[str, Any]:
    deficits = [r.deficit for r in records]
    failed = sum(1 for r in records if not r.passed)
    return {
        "min_deficit": min(deficits) if deficits else 0.0,
        "max_violation": max((max(0.0, -r.deficit - tolerance) for r in records), default=0.0),
        "count": len(records),
        "passed": len(records) - failed,
        "failed": failed,
    }
