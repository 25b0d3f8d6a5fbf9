"""Versioned check reports: JSON emission/parsing and an aligned text table."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__

SCHEMA_VERSION = 1
STATUSES = ("pass", "fail", "info")
PLUMBING = "plumbing"


def jsonable(value):
    """Coerce values into plain JSON types; exact rationals and classes become strings."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return str(value)


@dataclass
class CheckRecord:
    name: str
    citation: str
    status: str
    values: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")
        if self.status != "info" and not self.citation:
            raise ValueError(f"check {self.name!r} needs a citation anchor or {PLUMBING!r}")
        self.values = jsonable(self.values)

    def to_dict(self) -> dict:
        return {"name": self.name, "citation": self.citation, "status": self.status, "values": self.values}


def check(name: str, citation: str, ok: bool, **values) -> CheckRecord:
    return CheckRecord(name, citation, "pass" if ok else "fail", values)


def info(name: str, citation: str = "", **values) -> CheckRecord:
    return CheckRecord(name, citation, "info", values)


@dataclass
class Report:
    command: str
    parameters: dict
    records: list = field(default_factory=list)
    engine_version: str = __version__
    schema_version: int = SCHEMA_VERSION

    def __post_init__(self):
        self.parameters = jsonable(self.parameters)
        self.records = sorted(self.records, key=lambda r: r.name)

    @property
    def summary(self) -> dict:
        counts = {s: 0 for s in STATUSES}
        for r in self.records:
            counts[r.status] += 1
        return counts

    @property
    def failures(self) -> list:
        return [r for r in self.records if r.status == "fail"]

    def exit_status(self) -> int:
        return 1 if self.summary["fail"] else 0

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "engine_version": self.engine_version,
            "command": {"name": self.command, "parameters": self.parameters},
            "records": [r.to_dict() for r in self.records],
            "summary": self.summary,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> "Report":
        if data.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema_version {data.get('schema_version')!r}")
        records = [CheckRecord(r["name"], r["citation"], r["status"], r["values"]) for r in data["records"]]
        report = cls(data["command"]["name"], data["command"]["parameters"], records,
                     engine_version=data["engine_version"], schema_version=data["schema_version"])
        if report.summary != data["summary"]:
            raise ValueError("summary counts do not match records")
        return report

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))

    def to_text(self) -> str:
        rows = [("STATUS", "CHECK", "CITATION", "VALUES")]
        for r in self.records:
            rows.append((r.status.upper(), r.name, r.citation or "-",
                         json.dumps(r.values, sort_keys=True, separators=(",", ":"))))
        widths = [max(len(row[i]) for row in rows) for i in range(3)]
        lines = [f"scrolljet {self.engine_version}  command: {self.command}  "
                 f"parameters: {json.dumps(self.parameters, sort_keys=True)}"]
        for row in rows:
            lines.append("  ".join(cell.ljust(w) for cell, w in zip(row[:3], widths)) + "  " + row[3])
        s = self.summary
        lines.append(f"summary: {s['pass']} pass, {s['fail']} fail, {s['info']} info")
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "text":
            return self.to_text()
        raise ValueError(f"unknown format {fmt!r}")
