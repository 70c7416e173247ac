"""
Validation of BenchReport JSON against schema/bench_report.schema.json.

Checks are written out by hand, field by field, in the same order as the
schema file documents them.
"""
from __future__ import annotations

from typing import Any, Dict

from mesh.errors import ReportSchemaError
from report.export import CSV_COLUMNS, JSON_EXTRA, REPORT_VERSION

REQUIRED_TOP_LEVEL = ["version", "generated_at", "meta", "records"]
ENUMS = {
    "layout": ("aos", "soa"),
    "form": ("a", "b"),
    "strategy": ("fused", "twophase"),
    "backend": ("serial", "parallel"),
    "precision": ("single", "double"),
    "stop_reason": ("max_iters", "tolerance", "no_moves"),
}
INT_FIELDS = ["size", "workers", "iterations"]
MS_FIELDS = ["init_ms", "topo_ms", "constr_ms", "iter_ms", "total_ms"]
ALPHA_FIELDS = ["min_alpha_before", "min_alpha_after", "mean_alpha_before", "mean_alpha_after"]


def _number(v: Any) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool)


def validate_record(rec: Dict[str, Any], i: int) -> None:
    where = f"records[{i}]"
    if not isinstance(rec, dict):
        raise ReportSchemaError(f"{where} must be an object")
    for k in CSV_COLUMNS + JSON_EXTRA:
        if k not in rec:
            raise ReportSchemaError(f"{where} missing field: {k}")
    for k, allowed in ENUMS.items():
        if rec[k] not in allowed:
            raise ReportSchemaError(f"{where}.{k} must be one of {allowed} (got {rec[k]!r})")
    for k in INT_FIELDS:
        if not isinstance(rec[k], int) or isinstance(rec[k], bool) or rec[k] < 1:
            raise ReportSchemaError(f"{where}.{k} must be a positive integer (got {rec[k]!r})")
    for k in MS_FIELDS:
        if not _number(rec[k]) or rec[k] < 0:
            raise ReportSchemaError(f"{where}.{k} must be a non-negative number (got {rec[k]!r})")
    for k in ALPHA_FIELDS:
        if not _number(rec[k]) or not (-1.0 - 1e-6 <= rec[k] <= 1.0 + 1e-6):
            raise ReportSchemaError(f"{where}.{k} must be a number in [-1, 1] (got {rec[k]!r})")
    if rec["speedup"] is not None and (not _number(rec["speedup"]) or rec["speedup"] <= 0):
        raise ReportSchemaError(f"{where}.speedup must be a positive number or null")
    acc = rec["accepted"]
    if not isinstance(acc, list) or not all(isinstance(a, int) and a >= 0 for a in acc):
        raise ReportSchemaError(f"{where}.accepted must be a list of non-negative integers")
    if len(acc) != rec["iterations"]:
        raise ReportSchemaError(f"{where}.accepted has {len(acc)} entries for {rec['iterations']} iterations")


def validate_report(obj: Dict[str, Any]) -> None:
    if not isinstance(obj, dict):
        raise ReportSchemaError("report must be an object")
    for k in REQUIRED_TOP_LEVEL:
        if k not in obj:
            raise ReportSchemaError(f"missing top-level field: {k}")
    if obj["version"] != REPORT_VERSION:
        raise ReportSchemaError(f"unsupported report version {obj['version']!r}")
    if not isinstance(obj["generated_at"], str) or not obj["generated_at"].strip():
        raise ReportSchemaError("generated_at must be a non-empty string")
    if not isinstance(obj["meta"], dict):
        raise ReportSchemaError("meta must be an object")
    if not isinstance(obj["records"], list):
        raise ReportSchemaError("records must be an array")
    for i, rec in enumerate(obj["records"]):
        validate_record(rec, i)
