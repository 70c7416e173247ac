# report/export.py
import csv
import json
import os
from datetime import datetime, timezone
from typing import Any, Dict, List

import pandas as pd

from utils.report_writer import write_json

REPORT_VERSION = 1

# Fixed and documented; readers depend on this order.
CSV_COLUMNS = [
    "size",
    "layout",
    "form",
    "strategy",
    "backend",
    "workers",
    "iterations",
    "init_ms",
    "topo_ms",
    "constr_ms",
    "iter_ms",
    "total_ms",
    "min_alpha_before",
    "min_alpha_after",
    "mean_alpha_before",
    "mean_alpha_after",
    "speedup",
]

# JSON records carry these on top of the CSV columns.
JSON_EXTRA = ["precision", "stop_reason", "accepted"]


def utc_now_iso() -> str:
    return datetime.now(timezone.utc).replace(microsecond=0).isoformat().replace("+00:00", "Z")


def write_csv(records: List[Dict[str, Any]], path: str) -> str:
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.DictWriter(f, fieldnames=CSV_COLUMNS, extrasaction="ignore")
        writer.writeheader()
        for r in records:
            writer.writerow({k: ("" if r.get(k) is None else r.get(k)) for k in CSV_COLUMNS})
    return path


def read_csv(path: str) -> pd.DataFrame:
    df = pd.read_csv(path)
    if list(df.columns) != CSV_COLUMNS:
        raise ValueError(f"{path}: unexpected columns {list(df.columns)}")
    return df


def build_report(records: List[Dict[str, Any]], meta: Dict[str, Any]) -> Dict[str, Any]:
    return {
        "version": REPORT_VERSION,
        "generated_at": utc_now_iso(),
        "meta": dict(meta),
        "records": [
            {k: r.get(k) for k in CSV_COLUMNS + JSON_EXTRA}
            for r in records
        ],
    }


def write_report_json(report: Dict[str, Any], path: str) -> str:
    return write_json(path, report)


def read_report_json(path: str) -> Dict[str, Any]:
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)
