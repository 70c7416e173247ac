# runners/trend.py
from __future__ import annotations

import os
from typing import Any, Dict, List, Optional

import pandas as pd

from mesh.storage import build_mesh
from meshgen import GenKind, GenSpec, generate_arrays
from smoothing.config import DEFAULT_MAX_ITERS, DEFAULT_MOVE_TOL, Form, SmoothConfig
from smoothing.engine import smooth

DEFAULT_TREND_SEEDS = 10
DEFAULT_TREND_SIZE = 10000


def compare_forms(
    seeds: int = DEFAULT_TREND_SEEDS,
    size: int = DEFAULT_TREND_SIZE,
    max_iters: int = DEFAULT_MAX_ITERS,
    move_tol: float = DEFAULT_MOVE_TOL,
    first_seed: int = 0,
    say=print,
) -> pd.DataFrame:
    """
    Serial Form A against serial Form B on `seeds` Delaunay fixtures of
    `size` points: one row per seed with both iteration counts.
    """
    rows: List[Dict[str, Any]] = []
    for seed in range(first_seed, first_seed + seeds):
        pts, tri = generate_arrays(GenSpec(kind=GenKind.DELAUNAY, n_points=size, seed=seed))
        mesh = build_mesh(pts, tri)
        row: Dict[str, Any] = {"seed": seed, "size": size}
        for form in (Form.A, Form.B):
            _, stats = smooth(mesh, SmoothConfig(form=form, max_iters=max_iters, move_tol=move_tol))
            row[f"iters_{form.value}"] = stats.iterations
            row[f"stop_{form.value}"] = stats.stop_reason
            row[f"min_alpha_{form.value}"] = stats.min_alpha_after
        row["ratio"] = row["iters_a"] / row["iters_b"]
        rows.append(row)
        if say:
            say(f"  ✔ seed {seed}: form A {row['iters_a']} iters, form B {row['iters_b']} iters")
    return pd.DataFrame(rows)


def trend_summary(df: pd.DataFrame) -> Dict[str, Any]:
    if df.empty:
        return {"fixtures": 0, "b_not_slower": 0, "mean_ratio": float("nan")}
    return {
        "fixtures": int(len(df)),
        "b_not_slower": int((df["iters_b"] <= df["iters_a"]).sum()),
        "mean_ratio": round(float(df["ratio"].mean()), 4),
    }


def write_trend_csv(df: pd.DataFrame, path: str) -> str:
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    df.to_csv(path, index=False)
    return path
