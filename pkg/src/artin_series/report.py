"""Run reports: versioned JSON and a text summary.

The JSON is deterministic for a fixed scenario and seed except for the
top-level ``timings`` block, which ``strip_timings`` removes.
"""

from __future__ import annotations

import json
from typing import Dict, List, Sequence

from .scenario import ROW_OF, TaskOutcome

SCHEMA = 1

ROWS = ("Dimension", "Flatness", "CM")

# expected behaviour over a zero-dimensional base, per kind of series ring
REFERENCE = {
    "Dimension": ("n", "n if R is SFT, else infinite", "n"),
    "Flatness": ("faithfully flat", "faithfully flat if R is coherent", "faithfully flat"),
    "CM": ("yes", "not in general", "yes"),
}


def build_report(name: str, seed: int, outcomes: Sequence[TaskOutcome]) -> Dict:
    tasks = [o.to_json() for o in outcomes]
    return {
        "schema": SCHEMA,
        "scenario": name,
        "seed": seed,
        "passed": all(o.verdict == "pass" for o in outcomes),
        "tasks": tasks,
        "summary": summary_rows(outcomes),
        "timings": {f"{i}:{o.kind}": round(o.seconds, 6) for i, o in enumerate(outcomes)},
    }


def summary_rows(outcomes: Sequence[TaskOutcome]) -> Dict[str, Dict]:
    out = {}
    for row in ROWS:
        mine = [o for o in outcomes if ROW_OF[o.kind] == row]
        out[row] = {
            "tasks": len(mine),
            "instances": sum(o.instances for o in mine),
            "verified": bool(mine) and all(o.verdict == "pass" for o in mine),
        }
    return out


def to_json_text(report: Dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def strip_timings(report: Dict) -> Dict:
    return {k: v for k, v in report.items() if k != "timings"}


def render_text(report: Dict) -> str:
    lines: List[str] = [f"scenario {report['scenario']} (seed {report['seed']})", ""]
    for i, t in enumerate(report["tasks"]):
        msg = f" {t['reason']}" if t["reason"] else ""
        lines.append(f"  [{t['verdict'].upper():5}] {i:2d} {t['kind']:<15} {t['instances']:6d} instances{msg}")
    if not report["tasks"]:
        lines.append("  (no tasks)")
    lines.append("")
    head = ("", "Noetherian R[[X]]", "non-Noetherian R[[X]]", "F[[X]]", "verified on instances")
    rows = [head]
    for row in ROWS:
        s = report["summary"][row]
        verdict = "yes" if s["verified"] else "no"
        rows.append((row,) + REFERENCE[row] + (f"{verdict} ({s['instances']})",))
    widths = [max(len(r[c]) for r in rows) for c in range(len(head))]
    for j, r in enumerate(rows):
        lines.append("  " + " | ".join(cell.ljust(w) for cell, w in zip(r, widths)))
        if j == 0:
            lines.append("  " + "-+-".join("-" * w for w in widths))
    lines.append("")
    lines.append("all tasks passed" if report["passed"] else "some tasks FAILED")
    return "\n".join(lines) + "\n"
