"""Structured verification outcomes shared by every check and the CLI."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

PASS = "pass"
FAIL = "fail"
SKIPPED_CAP = "skipped-cap"

SCHEMA_VERSION = 1


def _jsonable(value: Any) -> Any:
    if isinstance(value, Fraction):
        return str(value) if value.denominator != 1 else value.numerator
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if hasattr(value, "serialize"):
        return value.serialize()
    return value


@dataclass
class CheckResult:
    name: str
    params: dict = field(default_factory=dict)
    status: str = PASS
    values: dict = field(default_factory=dict)
    witness: Any = None
    elapsed: float | None = None

    @property
    def ok(self) -> bool:
        return self.status == PASS

    def sort_key(self):
        return (self.name, sorted((k, json.dumps(_jsonable(v))) for k, v in self.params.items()))

    def to_dict(self, timings: bool = False) -> dict:
        out = {
            "name": self.name,
            "params": _jsonable(self.params),
            "status": self.status,
            "values": _jsonable(self.values),
        }
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        if timings and self.elapsed is not None:
            out["wall_time"] = round(self.elapsed, 6)
        return out


@dataclass
class Report:
    entries: list = field(default_factory=list)

    def add(self, entry: CheckResult) -> CheckResult:
        self.entries.append(entry)
        return entry

    def extend(self, other: "Report") -> None:
        self.entries.extend(other.entries)

    def sorted(self) -> "Report":
        return Report(sorted(self.entries, key=CheckResult.sort_key))

    @property
    def passed(self) -> bool:
        return all(e.status == PASS for e in self.entries)

    @property
    def failures(self) -> list:
        return [e for e in self.entries if e.status == FAIL]

    @property
    def skipped(self) -> list:
        return [e for e in self.entries if e.status == SKIPPED_CAP]

    def __getitem__(self, name: str) -> CheckResult:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def to_json(self, timings: bool = False) -> str:
        doc = {
            "schema": SCHEMA_VERSION,
            "summary": {
                "total": len(self.entries),
                "pass": sum(e.status == PASS for e in self.entries),
                "fail": len(self.failures),
                "skipped-cap": len(self.skipped),
            },
            "checks": [e.to_dict(timings) for e in self.entries],
        }
        return json.dumps(doc, indent=2, sort_keys=True)

    def to_text(self, timings: bool = False) -> str:
        lines = []
        for e in self.entries:
            params = " ".join(f"{k}={_jsonable(v)}" for k, v in sorted(e.params.items()))
            vals = " ".join(
                f"{k}={json.dumps(_jsonable(v))}" for k, v in sorted(e.values.items())
            )
            line = f"{e.status.upper():12} {e.name:16} {params}"
            if vals:
                line += f"  [{vals}]"
            if timings and e.elapsed is not None:
                line += f"  ({e.elapsed:.3f}s)"
            lines.append(line.rstrip())
        lines.append(
            f"{len(self.entries)} checks: "
            f"{sum(e.status == PASS for e in self.entries)} pass, "
            f"{len(self.failures)} fail, {len(self.skipped)} skipped-cap"
        )
        return "\n".join(lines)
