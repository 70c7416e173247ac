# quality/field.py
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from mesh.storage import MeshStorage
from quality.alpha import (
    fused_refresh,
    local_min_alpha,
    triangle_alphas,
    vertex_min_from_field,
)
from smoothing.backend import SERIAL, Backend
from topology.adjacency import Adjacency

Coords = Tuple[np.ndarray, np.ndarray]


@dataclass
class QualityField:
    """
    Views onto the mesh's own quality slots: `alpha` per triangle and
    `min_quality` (worst incident α) per vertex. Writing through the
    field writes into the mesh, in whatever layout it uses.
    """
    alpha: np.ndarray
    min_quality: np.ndarray

    @classmethod
    def of(cls, mesh: MeshStorage) -> "QualityField":
        return cls(alpha=mesh.tri_quality, min_quality=mesh.min_quality)

    def global_min(self) -> float:
        return float(np.nanmin(self.alpha)) if len(self.alpha) else float("nan")

    def global_mean(self) -> float:
        return float(np.nanmean(self.alpha)) if len(self.alpha) else float("nan")


def _coords(mesh: MeshStorage, coords: Optional[Coords]) -> Coords:
    return (mesh.x, mesh.y) if coords is None else coords


def compute_all_qualities(
    mesh: MeshStorage,
    backend: Backend = SERIAL,
    coords: Optional[Coords] = None,
) -> QualityField:
    """α of every triangle, one triangle per task."""
    x, y = _coords(mesh, coords)
    tri = mesh.tri
    out = mesh.tri_quality
    backend.map(lambda lo, hi: triangle_alphas(lo, hi, tri, x, y, out), mesh.n_trgl)
    return QualityField.of(mesh)


def reduce_min_quality(
    mesh: MeshStorage,
    adjacency: Adjacency,
    field: QualityField,
    backend: Backend = SERIAL,
) -> QualityField:
    """Per-vertex min over the incident α already stored in `field`."""
    ptr, loca = adjacency.loca_ptr, adjacency.loca
    backend.map(
        lambda lo, hi: vertex_min_from_field(lo, hi, ptr, loca, field.alpha, field.min_quality),
        mesh.n_vert,
    )
    return field


def min_incident_quality(mesh: MeshStorage, adjacency: Adjacency, v: int, field: QualityField) -> float:
    incident = adjacency.incident(v)
    if len(incident) == 0:
        raise ValueError(f"vertex {v} has no incident triangle")
    return float(np.min(field.alpha[incident]))


def update_fused(
    mesh: MeshStorage,
    adjacency: Adjacency,
    v: int,
    candidate: Sequence[float],
    coords: Optional[Coords] = None,
) -> float:
    """
    Min α over v's incident triangles if v stood at `candidate`; the
    other vertices stay where they are. Nothing is written.

    The candidate is rounded to the coordinate dtype and the result to the
    quality dtype, so it compares exactly with stored qualities.
    """
    if not (np.isfinite(candidate[0]) and np.isfinite(candidate[1])):
        raise ValueError(f"candidate must be finite (got {candidate!r})")
    x, y = _coords(mesh, coords)
    cx, cy = x.dtype.type(candidate[0]), y.dtype.type(candidate[1])
    q = local_min_alpha(v, cx, cy, adjacency.loca_ptr, adjacency.loca, mesh.tri, x, y, x, y, 0, 0)
    return float(mesh.tri_quality.dtype.type(q))


def update_two_phase(
    mesh: MeshStorage,
    adjacency: Adjacency,
    field: QualityField,
    backend: Backend = SERIAL,
    coords: Optional[Coords] = None,
) -> QualityField:
    """
    Phase 1 recomputes each triangle's α exactly once; phase 2 reduces the
    per-vertex minimum. `backend.map` returning is the barrier between them.
    """
    x, y = _coords(mesh, coords)
    tri = mesh.tri
    backend.map(lambda lo, hi: triangle_alphas(lo, hi, tri, x, y, field.alpha), mesh.n_trgl)
    return reduce_min_quality(mesh, adjacency, field, backend)


def refresh_fused(
    mesh: MeshStorage,
    adjacency: Adjacency,
    field: QualityField,
    backend: Backend = SERIAL,
    coords: Optional[Coords] = None,
) -> QualityField:
    """
    One task per vertex recomputes all its incident α (each triangle is
    evaluated once per incident vertex). Ends fully synchronized, with the
    same values update_two_phase produces.
    """
    x, y = _coords(mesh, coords)
    ptr, loca, tri = adjacency.loca_ptr, adjacency.loca, mesh.tri
    backend.map(
        lambda lo, hi: fused_refresh(lo, hi, ptr, loca, tri, x, y, field.alpha, field.min_quality),
        mesh.n_vert,
    )
    return field
