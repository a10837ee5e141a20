"""Text and JSON rendering of reports.

Both renderers are deterministic: the same report gives the same bytes.
"""

from __future__ import annotations

import json
from importlib import resources

from .report import Report

SCHEMA_RESOURCE = "schema/report-v1.json"


def load_schema() -> dict:
    return json.loads(resources.files("gbt_verify").joinpath(SCHEMA_RESOURCE).read_text())


def render_json(report: Report) -> str:
    return json.dumps(report.to_json(), indent=2, sort_keys=False, ensure_ascii=False) + "\n"


def _short(value) -> str:
    text = value if isinstance(value, str) else json.dumps(value)
    return text if len(text) <= 100 else text[:97] + "..."


def render_text(report: Report) -> str:
    lines = [f"gbt-verify {report.command}"]
    for key, value in report.options.items():
        if value is not None:
            lines.append(f"  {key}: {value}")
    for sec in report.sections:
        lines.append("")
        lines.append(f"== {sec.title}")
        lines.append(f"   [{sec.citation}]")
        for name, value in _headline(sec.data):
            lines.append(f"   {name}: {value}")
        for c in sec.checks:
            mark = "ok  " if c.ok else "FAIL"
            lines.append(f"   {mark} {c.name}")
            if not c.ok:
                lines.append(f"        expected {_short(c.expected)}")
                lines.append(f"        computed {_short(c.computed)}")
            if c.note:
                lines.append(f"        note: {c.note}")
        for f in sec.flags:
            lines.append(f"   flag: {f}")
    lines.append("")
    lines.append("result: " + ("all checks passed" if report.ok else "some checks failed"))
    return "\n".join(lines) + "\n"


def _headline(data: dict) -> list:
    """Scalar and row summaries worth printing in text mode."""
    out = []
    for key, value in data.items():
        if key == "rows" and isinstance(value, list):
            for row in value:
                desc = row.get("summary", row.get("dimension"))
                out.append((f"{row['label']} {row['element']}", desc))
        elif isinstance(value, (str, int, float, bool)):
            out.append((key, value))
        elif key == "forks":
            for fork in value:
                out.append(
                    (
                        f"fork '{fork['resolution']}'",
                        f"k = {fork['isolated_points']}, genera {fork['curve_genera']}, "
                        f"strict: {fork['strict_case'] or 'no case'}, "
                        f"as-claimed: {fork['as_claimed_case'] or 'no case'}",
                    )
                )
        elif key == "coset":
            out.append(("coset", ", ".join(f"{c['label']} ({c['upstairs']})" for c in value)))
    return out


def render(report: Report, fmt: str = "text") -> str:
    if fmt == "json":
        return render_json(report)
    if fmt == "text":
        return render_text(report)
    raise ValueError(f"unknown format {fmt!r}")
