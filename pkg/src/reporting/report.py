"""Run reports
One machine-readable document per run; the text rendering is derived from it
"""

import json
import logging
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List

from config.settings import REPORT_SCHEMA_VERSION

logger = logging.getLogger("mtc_engine.report")


@dataclass
class CheckRecord:
    """One residual check; suites return these instead of raising"""
    suite: str
    name: str
    residual: float
    passed: bool
    note: str = ""
    detail: str = ""

    @classmethod
    def from_axiom(cls, suite, check, note=""):
        return cls(suite, check.name, float(check.residual), bool(check.passed), note, check.detail)

    @classmethod
    def from_relation(cls, suite, result):
        return cls(suite, result.relation, float(result.residual), bool(result.passed), result.note, result.detail)


@dataclass
class Report:
    command: str
    category: str
    seed: int
    tolerance: float
    records: List[CheckRecord] = field(default_factory=list)
    extras: Dict[str, Any] = field(default_factory=dict)

    def extend(self, records):
        self.records.extend(records)

    @property
    def failures(self):
        return [r for r in self.records if not r.passed]

    @property
    def passed(self):
        return not self.failures

    def to_dict(self):
        return {
            "schema_version": REPORT_SCHEMA_VERSION,
            "command": self.command,
            "category": self.category,
            "seed": self.seed,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "summary": {
                "checks": len(self.records),
                "failed": [f"{r.suite}:{r.name}" for r in self.failures],
            },
            "checks": [asdict(r) for r in self.records],
            "extras": self.extras,
        }


def render_text(doc):
    """Human-readable rendering of a report document"""
    lines = [
        f"📊 {doc['command']} on {doc['category']}",
        f"   seed {doc['seed']}, tolerance {doc['tolerance']:.1e}, schema {doc['schema_version']}",
        "=" * 72,
    ]
    suite = None
    for check in doc["checks"]:
        if check["suite"] != suite:
            suite = check["suite"]
            lines.append(f"\n[{suite}]")
        mark = "✅" if check["passed"] else "❌"
        line = f"{mark} {check['name']:<28} residual {check['residual']:.3e}"
        if check["note"]:
            line += f"  ({check['note']})"
        lines.append(line)
        if not check["passed"] and check["detail"]:
            lines.append(f"      {check['detail']}")
    for key, value in doc["extras"].items():
        shown = str(value).lower() if isinstance(value, bool) else value
        lines.append(f"{key}: {shown}")
    lines.append("=" * 72)
    summary = doc["summary"]
    if doc["passed"]:
        lines.append(f"✅ {summary['checks']}/{summary['checks']} checks passed")
    else:
        passed = summary["checks"] - len(summary["failed"])
        lines.append(f"❌ {passed}/{summary['checks']} checks passed; failing: {', '.join(summary['failed'])}")
    return "\n".join(lines)


def emit(report, output_format="text", path=None):
    """Render the report, write it to path when given, and return the rendering"""
    doc = report.to_dict()
    rendered = json.dumps(doc, indent=2, default=str) if output_format == "json" else render_text(doc)
    if path:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(rendered + "\n")
        logger.info(f"Report written to {path}")
    return rendered
