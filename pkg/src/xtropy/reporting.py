"""Stable serialization of measure rows and verification reports.

CSV rows always carry the header ``c,d,measure,weight,value,err,status``;
floats are written with ``repr`` so they survive a round trip exactly,
and non-finite results leave the value and err fields empty.  JSON
reports are built with a fixed key order and dumped with fixed options,
so identical inputs give byte-identical output.
"""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Iterable, Mapping, Optional, Sequence, Union

from .measures import FINITE, MeasureValue
from .verify import REPORT_ONLY, MonotonicityReport

__all__ = [
    "CSV_HEADER",
    "measure_row",
    "emit_csv",
    "report_to_mapping",
    "pair_to_mapping",
    "emit_report",
    "dumps_stable",
]

CSV_HEADER = ("c", "d", "measure", "weight", "value", "err", "status")


def _cell(x: Optional[float]) -> Optional[float]:
    if x is None or not math.isfinite(x):
        return None
    return float(x)


def measure_row(
    c: Optional[float],
    d: Optional[float],
    measure: str,
    weight: Optional[str],
    mv: MeasureValue,
) -> dict:
    """One observation in wire order; value/err are None unless finite."""
    finite = mv.status == FINITE
    return {
        "c": _cell(c),
        "d": _cell(d),
        "measure": measure,
        "weight": weight or "",
        "value": _cell(mv.value) if finite else None,
        "err": _cell(mv.err_estimate) if finite else None,
        "status": mv.status,
    }


def _csv_field(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return repr(x)
    return str(x)


def emit_csv(rows: Iterable[Mapping]) -> str:
    """Render rows under the fixed header as RFC-4180 CSV text."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow([_csv_field(row.get(key)) for key in CSV_HEADER])
    return buf.getvalue()


def report_to_mapping(report: MonotonicityReport) -> dict:
    """Fixed-key-order mapping of one monotonicity report.

    ``verdict`` is omitted for report-only runs (no direction was
    asserted); ``nonfinite_cells`` and ``phi`` appear only when relevant.
    """
    values = []
    for cell in report.cells:
        entry: dict = {"c": cell.c, "d": cell.d}
        if cell.v is not None:
            entry["v"] = cell.v
        finite = cell.value.status == FINITE
        entry["value"] = _cell(cell.value.value) if finite else None
        entry["err"] = _cell(cell.value.err_estimate) if finite else None
        entry["status"] = cell.value.status
        values.append(entry)
    out: dict = {
        "claim": report.claim,
        "dist": report.dist,
        "params": list(report.params),
        "weight": report.weight,
    }
    if report.phi is not None:
        out["phi"] = report.phi
    out["grid"] = {k: v for k, v in report.grid.items()}
    out["values"] = values
    out["expected_direction"] = report.direction_expected
    out["violations"] = [
        {"index": v.index, "magnitude": v.magnitude} for v in report.violations
    ]
    out["slack"] = report.slack
    if report.direction_expected != REPORT_ONLY:
        out["verdict"] = report.verdict
    if report.nonfinite_cells:
        out["nonfinite_cells"] = list(report.nonfinite_cells)
    return out


_VERDICT_RANK = {"pass": 0, "inconclusive": 1, "fail": 2}


def pair_to_mapping(
    pair: Sequence[MonotonicityReport],
) -> dict:
    """Joint mapping for the two-direction claims (growing d, growing c)."""
    report_d, report_c = pair
    verdict = max(report_d.verdict, report_c.verdict, key=_VERDICT_RANK.__getitem__)
    return {
        "claim": report_d.claim,
        "verdict": verdict,
        "d_direction": report_to_mapping(report_d),
        "c_direction": report_to_mapping(report_c),
    }


def dumps_stable(obj) -> str:
    """Canonical JSON text: fixed indent, no key sorting (insertion order
    is the schema order), trailing newline."""
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def emit_report(
    report: Union[MonotonicityReport, Sequence[MonotonicityReport], Mapping]
) -> str:
    """JSON text for a report, a (d, c) report pair, or a ready mapping."""
    if isinstance(report, MonotonicityReport):
        return dumps_stable(report_to_mapping(report))
    if isinstance(report, Mapping):
        return dumps_stable(report)
    return dumps_stable(pair_to_mapping(report))
