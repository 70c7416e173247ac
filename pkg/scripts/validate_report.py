#!/usr/bin/env python3
"""
Validate a bench report JSON against schema/bench_report.schema.json.

Usage:
  python scripts/validate_report.py results/bench.json
Exit code:
  0 = valid
  1 = invalid
"""
from __future__ import annotations

import argparse
import json
import os
import sys

REPO_ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), ".."))
if REPO_ROOT not in sys.path:
    sys.path.insert(0, REPO_ROOT)

from mesh.errors import ReportSchemaError
from report.schema import validate_report


def fail(msg: str) -> None:
    print(f"[INVALID] {msg}", file=sys.stderr)
    sys.exit(1)


def parse_args(argv=None) -> argparse.Namespace:
    ap = argparse.ArgumentParser()
    ap.add_argument("report_json", help="Path to bench report JSON")
    return ap.parse_args(argv)


def main(argv=None) -> None:
    args = parse_args(argv)
    try:
        with open(args.report_json, "r", encoding="utf-8") as f:
            obj = json.load(f)
    except Exception as e:
        fail(f"failed to read JSON: {e}")

    try:
        validate_report(obj)
    except ReportSchemaError as e:
        fail(str(e))
    print(f"[VALID] {len(obj['records'])} records passed validation")
    sys.exit(0)


if __name__ == "__main__":
    main()
