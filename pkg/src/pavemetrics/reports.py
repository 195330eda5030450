"""Report containers and the text/csv/json renderers used by the CLI.

csv and json carry full-precision values and are value-identical for a
given run; text output rounds to three decimals and prints small
p-values in scientific notation.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass, field
from typing import Callable

SCHEMA_VERSION = 1
P_FLOOR = 1e-15


@dataclass
class Report:
    command: str
    columns: list[str]
    rows: list[dict]
    failures: list[dict] = field(default_factory=list)
    settings: dict = field(default_factory=dict)
    render_text: Callable[["Report", "Style"], str] | None = None
    warnings: list[str] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return 2 if self.failures else 0


class Style:
    """ANSI styling, enabled only for terminals and unless disabled by env."""

    def __init__(self, enabled: bool):
        self.enabled = enabled

    @classmethod
    def for_stream(cls, stream) -> "Style":
        if os.environ.get("PAVEMETRICS_NO_COLOR"):
            return cls(False)
        return cls(bool(getattr(stream, "isatty", lambda: False)()))

    def _wrap(self, s: str, code: str) -> str:
        return f"\033[{code}m{s}\033[0m" if self.enabled else s

    def bold(self, s: str) -> str:
        return self._wrap(s, "1")

    def red(self, s: str) -> str:
        return self._wrap(s, "31")

    def yellow(self, s: str) -> str:
        return self._wrap(s, "33")


def fmt_num(x, digits: int = 3) -> str:
    if x is None:
        return ""
    if isinstance(x, float) and not math.isfinite(x):
        return "inf" if x > 0 else ("-inf" if x < 0 else "nan")
    return f"{x:.{digits}f}"


def fmt_p(p) -> str:
    if p is None:
        return ""
    if p < P_FLOOR:
        return f"<{P_FLOOR:.0e}"
    if p < 1e-3:
        return f"{p:.3e}"
    return f"{p:.3f}"


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return repr(v)
    return str(v)


def _json_value(v):
    if isinstance(v, float) and not math.isfinite(v):
        return _cell(v)
    return v


def to_csv(report: Report) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(report.columns)
    for row in report.rows:
        w.writerow([_cell(row.get(c)) for c in report.columns])
    return buf.getvalue()


def to_json(report: Report) -> str:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": report.command,
        "settings": report.settings,
        "columns": report.columns,
        "results": [{c: _json_value(r.get(c)) for c in report.columns} for r in report.rows],
        "failures": report.failures,
        "warnings": report.warnings,
    }
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def to_text(report: Report, style: Style | None = None) -> str:
    style = style or Style(False)
    if report.render_text is None:
        return to_csv(report)
    return report.render_text(report, style)


def render(report: Report, fmt: str, style: Style | None = None) -> str:
    if fmt == "csv":
        return to_csv(report)
    if fmt == "json":
        return to_json(report)
    if fmt == "text":
        return to_text(report, style)
    raise ValueError(f"unknown format {fmt!r}")


def table(headers: list[str], rows: list[list[str]], align: str | None = None) -> str:
    """Fixed-width table; ``align`` holds one of 'l'/'r' per column."""
    align = align or "l" + "r" * (len(headers) - 1)
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(headers)]

    def line(cells):
        parts = [c.ljust(w) if a == "l" else c.rjust(w) for c, w, a in zip(cells, widths, align)]
        return "  ".join(parts).rstrip()

    out = [line(headers), line(["-" * w for w in widths])]
    out += [line(r) for r in rows]
    return "\n".join(out)


def failures_text(report: Report, style: Style) -> str:
    if not report.failures:
        return ""
    lines = ["", style.yellow("Failures:")]
    for f in report.failures:
        where = " ".join(str(f[k]) for k in ("pavement_type", "indicator", "row") if f.get(k) is not None)
        lines.append(f"  {where}: {f['error']}")
    return "\n".join(lines) + "\n"


def write_output(text: str, path=None) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
