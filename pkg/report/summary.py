# report/summary.py
from typing import Any, Dict, List

import pandas as pd

CELL_KEYS = ["layout", "form", "strategy", "backend"]


def _cell_label(row: pd.Series) -> str:
    return "/".join(str(row[k]) for k in CELL_KEYS)


def summary_tables(records: List[Dict[str, Any]]) -> Dict[str, pd.DataFrame]:
    """Running time and speedup pivots: one row per size, one column per cell."""
    df = pd.DataFrame(records)
    if df.empty:
        return {}
    df["cell"] = df.apply(_cell_label, axis=1)
    order = list(dict.fromkeys(df["cell"]))
    times = df.pivot_table(index="size", columns="cell", values="total_ms", aggfunc="first")[order]
    speed = (
        df.assign(speedup=pd.to_numeric(df["speedup"], errors="coerce"))
        .pivot_table(index="size", columns="cell", values="speedup", aggfunc="first", dropna=False)
        .reindex(columns=order)
    )
    iters = df.pivot_table(index="size", columns="cell", values="iterations", aggfunc="first")[order]
    return {"Running time (ms)": times, "Speedup": speed, "Iterations": iters}


def render_markdown(records: List[Dict[str, Any]], title: str = "Smoothing benchmark") -> str:
    tables = summary_tables(records)
    if not tables:
        return f"# {title}\n\n⚠️ No cells recorded.\n"
    parts = [f"# {title}", ""]
    for name, table in tables.items():
        parts.append(f"## {name}")
        parts.append("")
        parts.append(table.to_markdown(floatfmt=".3f"))
        parts.append("")
    return "\n".join(parts)


def write_markdown(records: List[Dict[str, Any]], path: str, title: str = "Smoothing benchmark") -> str:
    with open(path, "w", encoding="utf-8") as f:
        f.write(render_markdown(records, title))
    return path
