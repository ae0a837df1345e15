"""CSV and JSON encodings of scan reports.

Every integer is written as a decimal string in JSON so that arbitrarily
large values survive tools with fixed-width number types.  Both encodings
are deterministic: no timestamps, stable key and row order.
"""

from __future__ import annotations

import csv
import io
import json

from .catalog import Cycle, Provenance
from .maps import MapSpec
from .orbit import Bounds
from .scanner import ScanRecord, ScanReport

CSV_COLUMNS = ("seed", "classification", "cycle_min", "cycle_len", "entry_steps", "steps", "peak")
_INT_FIELDS = ("seed", "cycle_min", "cycle_len", "entry_steps", "steps", "peak")


def _s(v):
    return None if v is None else str(v)


def _i(v):
    return None if v is None or v == "" else int(v)


def records_to_csv(records) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        w.writerow(["" if getattr(r, c) is None else str(getattr(r, c)) for c in CSV_COLUMNS])
    return buf.getvalue()


def records_from_csv(text: str) -> list[ScanRecord]:
    reader = csv.DictReader(io.StringIO(text))
    if tuple(reader.fieldnames or ()) != CSV_COLUMNS:
        raise ValueError(f"unexpected CSV header {reader.fieldnames}")
    out = []
    for row in reader:
        vals = {c: _i(row[c]) for c in _INT_FIELDS}
        out.append(ScanRecord(classification=row["classification"], **vals))
    return out


def _record_to_dict(r: ScanRecord) -> dict:
    return {c: (r.classification if c == "classification" else _s(getattr(r, c))) for c in CSV_COLUMNS}


def report_to_dict(report: ScanReport) -> dict:
    s = report.summary
    return {
        "map": {"a": str(report.map.a), "b": str(report.map.b), "name": report.map.name},
        "range": [str(report.lo), str(report.hi)],
        "bounds": {
            "max_steps": str(report.bounds.max_steps),
            "max_value_bits": str(report.bounds.max_value_bits),
            "stop_at_one": report.bounds.stop_at_one,
        },
        "records": [_record_to_dict(r) for r in report.records],
        "summary": {
            "total": str(s["total"]),
            "classification_counts": {k: str(v) for k, v in s["classification_counts"].items()},
            "cycle_counts": {str(k): str(v) for k, v in s["cycle_counts"].items()},
            "undetermined": [{"seed": str(u["seed"]), "bound": u["bound"]} for u in s["undetermined"]],
        },
        "catalog_delta": [
            {"cycle": [str(x) for x in c.elements], "provenance": p.to_dict()}
            for c, p in report.catalog_delta
        ],
    }


def report_to_json(report: ScanReport) -> str:
    return json.dumps(report_to_dict(report), indent=2) + "\n"


def report_from_json(text: str) -> ScanReport:
    d = json.loads(text)
    m = d["map"]
    bd = d["bounds"]
    records = [
        ScanRecord(classification=r["classification"], **{c: _i(r[c]) for c in _INT_FIELDS})
        for r in d["records"]
    ]
    s = d["summary"]
    summary = {
        "total": int(s["total"]),
        "classification_counts": {k: int(v) for k, v in s["classification_counts"].items()},
        "cycle_counts": {int(k): int(v) for k, v in s["cycle_counts"].items()},
        "undetermined": [{"seed": int(u["seed"]), "bound": u["bound"]} for u in s["undetermined"]],
    }
    delta = [
        (Cycle(tuple(int(x) for x in e["cycle"])), Provenance.from_dict(e["provenance"]))
        for e in d["catalog_delta"]
    ]
    return ScanReport(
        MapSpec(int(m["a"]), int(m["b"]), m["name"]),
        int(d["range"][0]),
        int(d["range"][1]),
        Bounds(int(bd["max_steps"]), int(bd["max_value_bits"]), bool(bd["stop_at_one"])),
        records,
        summary,
        delta,
    )


def summary_text(report: ScanReport) -> str:
    s = report.summary
    counts = ", ".join(f"{k}={v}" for k, v in s["classification_counts"].items())
    lines = [f"{report.map.name} seeds {report.lo}..{report.hi}: {counts}"]
    for cmin, n in s["cycle_counts"].items():
        lines.append(f"  cycle min={cmin}: {n} seeds")
    if s["undetermined"]:
        shown = " ".join(str(u["seed"]) for u in s["undetermined"][:20])
        more = "" if len(s["undetermined"]) <= 20 else " ..."
        lines.append(f"  undetermined: {shown}{more}")
    for c, p in report.catalog_delta:
        lines.append(f"  new cycle min={c.min_element} len={c.length} (first seed {p.seed})")
    return "\n".join(lines)
