# report/speedup.py
import math
from typing import Any, Dict, List, Optional

import pandas as pd

# Every cell is compared with the serial AoS Form B fused cell of its size.
BASELINE_CELL = {"layout": "aos", "form": "b", "strategy": "fused", "backend": "serial"}


def is_baseline(record: Dict[str, Any]) -> bool:
    return all(record.get(k) == v for k, v in BASELINE_CELL.items())


def baseline_times(records: List[Dict[str, Any]]) -> Dict[int, float]:
    df = pd.DataFrame(records)
    if df.empty:
        return {}
    mask = pd.Series(True, index=df.index)
    for k, v in BASELINE_CELL.items():
        mask &= df[k] == v
    base = df[mask]
    return {int(s): float(t) for s, t in zip(base["size"], base["total_ms"])}


def speedup(base_ms: Optional[float], cell_ms: float) -> Optional[float]:
    if base_ms is None or not cell_ms or math.isnan(cell_ms) or cell_ms <= 0.0:
        return None
    return round(base_ms / cell_ms, 4)


def add_speedups(records: List[Dict[str, Any]]) -> List[Dict[str, Any]]:
    """Fill each record's `speedup` in place; None where no baseline ran."""
    base = baseline_times(records)
    for r in records:
        r["speedup"] = speedup(base.get(int(r["size"])), float(r["total_ms"]))
    return records
