# meshgen/points.py
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Union

import numpy as np

from mesh.errors import GenerationError

# Points closer than this (per axis) are treated as duplicates and redrawn.
DUPLICATE_TOL = 1e-12
MAX_PERTURBATION = 0.49


class GenKind(str, Enum):
    DELAUNAY = "delaunay"
    GRID = "grid"


def make_rng(seed: int) -> np.random.Generator:
    """Philox counter-based generator: same seed, same stream on every platform."""
    return np.random.Generator(np.random.Philox(int(seed) & 0xFFFFFFFFFFFFFFFF))


@dataclass(frozen=True)
class GenSpec:
    """What to generate on the unit square. Identical specs give identical meshes."""
    kind: Union[GenKind, str] = GenKind.DELAUNAY
    n_points: int = 1000
    rows: int = 0
    cols: int = 0
    seed: int = 0
    perturbation: float = 0.0

    def __post_init__(self):
        try:
            object.__setattr__(self, "kind", GenKind(str(getattr(self.kind, "value", self.kind)).lower()))
        except ValueError:
            raise GenerationError(f"unknown mesh kind {self.kind!r} (expected delaunay or grid)") from None
        if self.kind == GenKind.DELAUNAY:
            if self.n_points < 3:
                raise GenerationError(f"need at least 3 points (got {self.n_points})")
        else:
            if self.rows < 2 or self.cols < 2:
                raise GenerationError(f"grid needs rows, cols >= 2 (got {self.rows}x{self.cols})")
            if not (0.0 <= self.perturbation <= MAX_PERTURBATION):
                raise GenerationError(
                    f"perturbation must be in [0, {MAX_PERTURBATION}] (got {self.perturbation})"
                )

    @property
    def n_vertices(self) -> int:
        return self.n_points if self.kind == GenKind.DELAUNAY else self.rows * self.cols

    def to_dict(self) -> Dict[str, Any]:
        if self.kind == GenKind.DELAUNAY:
            return {"kind": self.kind.value, "n_points": self.n_points, "seed": self.seed}
        return {
            "kind": self.kind.value,
            "rows": self.rows,
            "cols": self.cols,
            "perturbation": self.perturbation,
            "seed": self.seed,
        }


def _duplicate_rows(pts: np.ndarray, tol: float = DUPLICATE_TOL) -> np.ndarray:
    """Indices of points lying within `tol` of an earlier point (both axes)."""
    order = np.argsort(pts[:, 0], kind="stable")
    xs = pts[order, 0]
    ys = pts[order, 1]
    dup = np.zeros(len(pts), dtype=bool)
    lag = 1
    while lag < len(pts):
        close_x = (xs[lag:] - xs[:-lag]) <= tol
        if not close_x.any():
            break
        close = close_x & (np.abs(ys[lag:] - ys[:-lag]) <= tol)
        i = order[:-lag][close]
        j = order[lag:][close]
        dup[np.maximum(i, j)] = True
        lag += 1
    return np.flatnonzero(dup)


def generate_points(spec: GenSpec) -> np.ndarray:
    """`spec.n_points` uniform points in [0, 1)², duplicates redrawn."""
    if spec.n_points < 3:
        raise GenerationError(f"need at least 3 points (got {spec.n_points})")
    rng = make_rng(spec.seed)
    pts = rng.random((spec.n_points, 2))
    dup = _duplicate_rows(pts)
    while len(dup):
        pts[dup] = rng.random((len(dup), 2))
        dup = _duplicate_rows(pts)
    return pts
