"""
Rendering of command payloads: compact JSON for records and reports, CSV for
bounds tables.
"""

import json
from typing import Any, Dict, List

import pandas as pd

from bounds import SCAN_COLUMNS, BoundsReport
from errors import SelfDualError
from models import BoundsRow, ErrorPayload

CSV_FLOAT_FORMAT = "%.12g"


def render_json(payload: Any) -> str:
    """Compact, key-order preserving JSON."""
    return json.dumps(payload, separators=(",", ":"), ensure_ascii=False)


def report_to_row(report: BoundsReport) -> BoundsRow:
    best = report.best
    return BoundsRow(
        q=report.q,
        l=best.l if best else None,
        r=best.r if best else None,
        delta0=report.delta0,
        delta1=float(best.delta1) if best else None,
        delta1_exact=str(best.delta1) if best else None,
        beats_gv=report.beats_gv,
        borderline=report.borderline,
    )


def frame_to_rows(df: pd.DataFrame) -> List[Dict[str, Any]]:
    """Scan frame as JSON-ready rows; missing values become null."""
    rows = []
    for record in df.to_dict(orient="records"):
        row = BoundsRow(
            q=int(record["q"]),
            l=None if pd.isna(record["l"]) else int(record["l"]),
            r=None if pd.isna(record["r"]) else int(record["r"]),
            delta0=float(record["delta0"]),
            delta1=None if pd.isna(record["delta1"]) else float(record["delta1"]),
            beats_gv=bool(record["beats_gv"]),
            borderline=bool(record.get("borderline", False)),
        )
        rows.append(row.model_dump(exclude={"delta1_exact"}))
    return rows


def frame_to_csv(df: pd.DataFrame) -> str:
    """
    CSV with columns q,l,r,delta0,delta1,beats_gv; primes leave l, r and
    delta1 empty.
    """
    out = df[SCAN_COLUMNS].copy()
    out["beats_gv"] = out["beats_gv"].map({True: "true", False: "false"})
    return out.to_csv(index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")


def records_to_csv(records: List[Dict[str, Any]]) -> str:
    return pd.DataFrame.from_records(records).to_csv(
        index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")


def error_text(err: SelfDualError) -> str:
    payload = ErrorPayload(**err.to_payload())
    return payload.model_dump_json(exclude_none=True)
