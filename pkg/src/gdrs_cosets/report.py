"""Check records and JSON/CSV/text rendering.

Every integer is written as a decimal string in JSON so values beyond 2^53
survive any consumer.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

PASS = "PASS"
FAIL = "FAIL"
WARN = "WARN"
UNTESTED = "UNTESTED"


@dataclass
class Check:
    name: str
    status: str
    expected: object = None
    actual: object = None
    detail: str = ""

    def as_dict(self):
        out = {"name": self.name, "status": self.status, "expected": self.expected, "actual": self.actual}
        if self.detail:
            out["detail"] = self.detail
        return out


def check_equal(name, expected, actual, detail="", on_fail=FAIL):
    return Check(name, PASS if expected == actual else on_fail, expected, actual, detail)


@dataclass
class Report:
    command: str
    params: dict
    rows: list = field(default_factory=list)
    checks: list = field(default_factory=list)

    @property
    def failed(self):
        return any(c.status == FAIL for c in self.checks)

    def count(self, status):
        return sum(c.status == status for c in self.checks)

    def as_dict(self):
        return {
            "command": self.command,
            "params": self.params,
            "rows": self.rows,
            "checks": [c.as_dict() for c in self.checks],
        }


def _stringify(obj):
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _stringify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_stringify(v) for v in obj]
    return obj


def _cell(v):
    if isinstance(v, (list, tuple)):
        return " ".join(str(x) for x in v)
    return "" if v is None else str(v)


def to_json(report):
    return json.dumps(_stringify(report.as_dict()), indent=2) + "\n"


def to_csv(report):
    buf = io.StringIO()
    header = []
    for row in report.rows:
        header.extend(k for k in row if k not in header)
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in report.rows:
        writer.writerow([_cell(row.get(k)) for k in header])
    return buf.getvalue()


def to_text(report):
    lines = [f"# {report.command} " + " ".join(f"{k}={_cell(v)}" for k, v in report.params.items())]
    if report.rows:
        header = []
        for row in report.rows:
            header.extend(k for k in row if k not in header)
        table = [header] + [[_cell(row.get(k)) for k in header] for row in report.rows]
        widths = [max(len(r[i]) for r in table) for i in range(len(header))]
        for r in table:
            lines.append("  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip())
    for c in report.checks:
        line = f"{c.status:8} {c.name}"
        if c.status != PASS or c.expected is not None:
            line += f"  expected={_cell(c.expected)} actual={_cell(c.actual)}"
        if c.detail:
            line += f"  ({c.detail})"
        lines.append(line)
    if report.checks:
        lines.append(
            f"summary: {report.count(PASS)} pass, {report.count(FAIL)} fail, "
            f"{report.count(WARN)} warn, {report.count(UNTESTED)} untested"
        )
    return "\n".join(lines) + "\n"


def render(report, fmt):
    if fmt == "json":
        return to_json(report)
    if fmt == "csv":
        return to_csv(report)
    if fmt == "text":
        return to_text(report)
    raise ValueError(f"unknown format {fmt!r}")
