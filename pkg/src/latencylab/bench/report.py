"""Serialize benchmark reports as JSON, CSV or aligned text."""

from __future__ import annotations

import csv
import enum
import io
import json
import sys
from pathlib import Path
from typing import Any, Optional, Protocol, Union


class ReportFormat(enum.Enum):
    JSON = "json"
    CSV = "csv"
    TEXT = "text"


class Report(Protocol):
    CSV_COLUMNS: tuple[str, ...]

    def to_dict(self) -> dict[str, Any]: ...

    def csv_rows(self) -> list[tuple[Any, ...]]: ...

    def to_text(self) -> str: ...


def render(report: Report, fmt: Union[ReportFormat, str]) -> str:
    fmt = ReportFormat(fmt)
    if fmt is ReportFormat.JSON:
        return json.dumps(report.to_dict(), indent=2) + "\n"
    if fmt is ReportFormat.CSV:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(report.CSV_COLUMNS)
        writer.writerows(report.csv_rows())
        return buf.getvalue()
    return report.to_text()


def emit_report(report: Report, fmt: Union[ReportFormat, str] = ReportFormat.JSON, path: Optional[Union[str, Path]] = None) -> None:
    """Write ``report`` to ``path``, or to stdout when ``path`` is None.  I/O errors propagate."""
    text = render(report, fmt)
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        Path(path).write_text(text, encoding="utf-8")
