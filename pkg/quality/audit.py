# quality/audit.py
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List

import numpy as np

from mesh.storage import MeshStorage, init_flags
from quality.alpha import degenerate_mask
from quality.field import compute_all_qualities
from topology.adjacency import determine_constraints, find_neighbors, isolated_vertices, non_manifold_edges

HISTOGRAM_BINS = 20
HISTOGRAM_RANGE = (-1.0, 1.0)


@dataclass
class QualityAudit:
    n_vert: int
    n_trgl: int
    min_alpha: float
    mean_alpha: float
    max_alpha: float
    non_positive: int
    degenerate: int
    boundary_vertices: int
    interior_vertices: int
    non_manifold_edges: int
    isolated_vertices: int
    precision: str
    bin_edges: List[float] = field(default_factory=list)
    histogram: List[int] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def alpha_histogram(alpha: np.ndarray, bins: int = HISTOGRAM_BINS):
    # α can overshoot 1 by rounding; keep it in the last bin
    clipped = np.clip(np.asarray(alpha, dtype=np.float64), *HISTOGRAM_RANGE)
    counts, edges = np.histogram(clipped, bins=bins, range=HISTOGRAM_RANGE)
    return counts, edges


def audit_mesh(mesh: MeshStorage) -> QualityAudit:
    """Quality and structure summary of `mesh`; the mesh itself is not modified."""
    work = init_flags(mesh.copy())
    alpha = compute_all_qualities(work).alpha.astype(np.float64)
    adjacency = find_neighbors(work)
    determine_constraints(work, adjacency)

    counts, edges = alpha_histogram(alpha)
    n_boundary = int(np.count_nonzero(work.boundary))
    return QualityAudit(
        n_vert=work.n_vert,
        n_trgl=work.n_trgl,
        min_alpha=float(alpha.min()),
        mean_alpha=float(alpha.mean()),
        max_alpha=float(alpha.max()),
        non_positive=int(np.count_nonzero(alpha <= 0.0)),
        degenerate=int(np.count_nonzero(degenerate_mask(work.tri, work.x, work.y))),
        boundary_vertices=n_boundary,
        interior_vertices=work.n_vert - n_boundary,
        non_manifold_edges=non_manifold_edges(work),
        isolated_vertices=isolated_vertices(work),
        precision=work.precision,
        bin_edges=[float(e) for e in edges],
        histogram=[int(c) for c in counts],
    )
