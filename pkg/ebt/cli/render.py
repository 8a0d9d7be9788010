from __future__ import annotations

import csv
import io
import logging
from contextlib import contextmanager
from enum import Enum
from typing import Iterator

import typer
from rich.console import Console
from rich.table import Table

from ebt.algebra.presented import GroupElementClass
from ebt.cli.schemas import ErrorReport, Report, SuiteReport
from ebt.core.errors import EXIT_VERIFICATION_FAILED, EbtError

logger = logging.getLogger(__name__)


class OutputFormat(str, Enum):
    json = "json"
    table = "table"
    csv = "csv"


def class_payload(cls: GroupElementClass) -> dict:
    order = cls.order
    return {
        "order": "infinite" if order is None else order,
        "coords": list(cls.coords),
        "reduced_coords": list(cls.reduced),
        "torsion_coords": list(cls.torsion),
        "free_coords": list(cls.free),
    }


def _cell(value: object) -> str:
    if isinstance(value, list):
        return " ".join(str(v) for v in value)
    if value is None:
        return ""
    return str(value)


def _rows(report: Report) -> tuple[list[str], list[list[str]]]:
    if isinstance(report, SuiteReport):
        headers = ["check", "passed", "informational", "witnesses"]
        rows = [
            [c.name, str(c.passed).lower(), str(c.informational).lower(), "; ".join(c.witnesses[:5])]
            for c in report.checks
        ]
        rows += [
            [f"{c.map} on {c.group}, n={c.n}", str(c.iso_over_Q).lower(), "false", f"rank_B={c.rank_B} rank_M={c.rank_M} mu_rank={c.mu_rank}"]
            for c in report.comparisons
        ]
        return headers, rows
    dumped = report.model_dump(mode="json", by_alias=True)
    return ["field", "value"], [[key, _cell(value)] for key, value in dumped.items()]


def emit(report: Report, fmt: OutputFormat = OutputFormat.json) -> None:
    if fmt is OutputFormat.json:
        typer.echo(report.model_dump_json(by_alias=True, indent=2))
        return
    headers, rows = _rows(report)
    if fmt is OutputFormat.csv:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(headers)
        writer.writerows(rows)
        typer.echo(buffer.getvalue(), nl=False)
        return
    table = Table(title=getattr(report, "suite", None) or type(report).__name__)
    for header in headers:
        table.add_column(header)
    for row in rows:
        table.add_row(*row)
    Console().print(table)


@contextmanager
def reporting(fmt: OutputFormat) -> Iterator[None]:
    """Turn library errors into an error payload and the matching exit code."""
    try:
        yield
    except EbtError as exc:
        logger.debug("Command failed: %s", exc.detail)
        emit(ErrorReport(error=exc.detail, exit_code=exc.exit_code), fmt)
        raise typer.Exit(code=exc.exit_code) from exc


def finish(report: Report, fmt: OutputFormat) -> None:
    emit(report, fmt)
    if isinstance(report, SuiteReport) and not report.passed:
        raise typer.Exit(code=EXIT_VERIFICATION_FAILED)
