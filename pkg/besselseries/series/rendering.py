"""Text, JSON and CSV renderings of outcomes, reports and tables.

Numbers are formatted in Python before they reach a template or CSV writer,
so output never depends on locale settings.
"""

import csv
import io

from django.template.loader import render_to_string
from rest_framework.renderers import JSONRenderer

from .serializers import (
    RECORD_FIELDS,
    CorollaryTablesSerializer,
    EvalOutcomeSerializer,
    VerificationReportSerializer,
)

PLOT_HEADER = ["x", "closed_re", "closed_im", "oracle_re", "oracle_im", "abs_diff"]
TABLE_HEADER = [
    "N", "p", "alternating", "formula", "x",
    "catalog_re", "catalog_im", "theorem_re", "theorem_im",
    "oracle_re", "oracle_im", "printed_re", "printed_im", "max_diff",
]

# Imaginary parts below this are shown as a plain real number in text output.
DISPLAY_REAL_CUTOFF = 1e-12


def csv_value(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def fmt(value, digits=15) -> str:
    """Complex or real number for human-readable output."""
    if value is None:
        return "-"
    value = complex(value)
    if abs(value.imag) < DISPLAY_REAL_CUTOFF:
        return f"{value.real:.{digits}g}"
    return f"{value.real:.{digits}g}{value.imag:+.{digits}g}i"


def fmt_diff(value) -> str:
    return "-" if value is None else f"{value:.3e}"


def to_json(data) -> str:
    return JSONRenderer().render(data, renderer_context={"indent": 2}).decode("utf-8") + "\n"


def to_csv(header, rows) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([csv_value(v) for v in row])
    return buffer.getvalue()


def outcomes_json(outcomes) -> str:
    return to_json(EvalOutcomeSerializer(outcomes, many=True).data)


def report_json(report) -> str:
    return to_json(VerificationReportSerializer(report).data)


def report_csv(report) -> str:
    rows = []
    for data in VerificationReportSerializer(report).data["records"]:
        rows.append([data[name] for name in RECORD_FIELDS])
    return to_csv(RECORD_FIELDS, rows)


def summary_line(report) -> str:
    summary = report.summary()
    if summary["failed"]:
        return f"FAIL: {summary['failed']}/{summary['total']} checks failed"
    return f"PASS: {summary['passed']}/{summary['total']} checks"


def _record_row(record):
    return {
        "check": str(record.check),
        "series": str(record.spec) if record.spec else "",
        "x": fmt(record.x, 6),
        "lhs": fmt(record.lhs),
        "rhs": fmt(record.rhs),
        "diff": fmt_diff(record.abs_diff),
        "tol": f"{record.tol:.0e}",
        "status": "ok" if record.passed else "FAIL",
        "note": record.note,
    }


def report_text(report, include_records=False) -> str:
    summary = report.summary()
    return render_to_string("series/verification_report.txt", {
        "summary_line": summary_line(report),
        "summary": summary,
        "max_diff": [(check, fmt_diff(diff)) for check, diff in summary["max_diff"].items()],
        "failures": [_record_row(r) for r in report.failures],
        "flagged": [_record_row(r) for r in report.flagged_records],
        "records": [_record_row(r) for r in report.gated_records] if include_records else [],
    })


def outcomes_text(spec, x, outcomes) -> str:
    lines = [f"{spec} at x = {fmt(x)}"]
    for outcome in outcomes:
        line = f"  {outcome.method.value:<9} {fmt(outcome.value)}"
        if outcome.method == "oracle":
            line += f"  (est_tail={outcome.est_tail:.3e}, terms={outcome.terms_used})"
        lines.append(line)
    for i, first in enumerate(outcomes):
        for second in outcomes[i + 1:]:
            diff = abs(first.value - second.value)
            lines.append(f"  |{first.method.value} - {second.method.value}| = {diff:.3e}")
    return "\n".join(lines) + "\n"


def tables_json(tables) -> str:
    return to_json(CorollaryTablesSerializer(tables).data)


def tables_csv(tables) -> str:
    rows = []
    for row in tables.rows:
        spec = row.spec
        for cell in row.cells:
            printed = cell.printed
            rows.append([
                spec.N, spec.p, spec.alternating, row.entry.display, cell.x,
                cell.catalog.real, cell.catalog.imag,
                cell.theorem.real, cell.theorem.imag,
                cell.oracle.real, cell.oracle.imag,
                None if printed is None else printed.real,
                None if printed is None else printed.imag,
                cell.max_diff,
            ])
    return to_csv(TABLE_HEADER, rows)


def tables_text(tables) -> str:
    families = []
    for alternating, title in ((False, "sum_v J_{Nv+p}(x)"), (True, "sum_v (-1)^v J_{Nv+p}(x)")):
        rows = []
        for row in tables.rows:
            if row.spec.alternating != alternating:
                continue
            rows.append({
                "N": row.spec.N,
                "p": row.spec.p,
                "formula": row.entry.display + (" *" if row.entry.suspect else ""),
                "cells": [{
                    "x": fmt(cell.x, 6),
                    "catalog": fmt(cell.catalog),
                    "theorem": fmt(cell.theorem),
                    "oracle": fmt(cell.oracle),
                    "printed": fmt(cell.printed) if cell.printed is not None else "",
                    "max_diff": fmt_diff(cell.max_diff),
                } for cell in row.cells],
            })
        families.append({"title": title, "rows": rows})
    return render_to_string("series/corollary_tables.txt", {
        "families": families,
        "suspects": [{
            "series": str(row.spec),
            "display": row.entry.display,
            "reading": row.entry.reading,
            "note": row.entry.note,
        } for row in tables.suspect_rows],
    })


def plot_csv(samples) -> str:
    return to_csv(PLOT_HEADER, (
        [s.x, s.closed.real, s.closed.imag, s.oracle.real, s.oracle.imag, s.abs_diff]
        for s in samples
    ))
