from report.export import CSV_COLUMNS, build_report, read_csv, read_report_json, write_csv, write_report_json
from report.schema import validate_report
from report.speedup import BASELINE_CELL, add_speedups
from report.summary import render_markdown, write_markdown
