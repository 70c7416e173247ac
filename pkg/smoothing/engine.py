"""
Smart Laplacian smoothing engine.

One run is the four-stage pipeline

    init_flags + triangle α        ("init")
    find_neighbors + vertex min α  ("topo")
    determine_constraints          ("constr")
    passes until a stop condition  ("iter")

Each pass visits every free vertex once, in chunk order, then refreshes the
quality field with the configured strategy. The backend's map is the
barrier between the pass and the refresh, and between the refresh and the
next pass.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from mesh.storage import MeshStorage, coordinate_buffer, init_flags
from quality.field import (
    QualityField,
    compute_all_qualities,
    reduce_min_quality,
    refresh_fused,
    update_fused,
    update_two_phase,
)
from smoothing.backend import Backend
from smoothing.config import Form, SmoothConfig, Strategy
from smoothing.kernels import candidate_position, smooth_chunk
from smoothing.stats import STOP_MAX_ITERS, STOP_NO_MOVES, STOP_TOLERANCE, RunStats
from topology.adjacency import Adjacency, determine_constraints, find_neighbors
from utils.phase_timer import PhaseTimer

Point = Tuple[float, float]
Coords = Tuple[np.ndarray, np.ndarray]


# --- single-vertex operations ------------------------------------------------

def candidate_position_form_a(v: int, old_coords: Coords, adjacency: Adjacency) -> Point:
    """Mean of v's neighbors read from the previous-pass buffer."""
    if len(adjacency.neighbors(v)) == 0:
        raise ValueError(f"vertex {v} has no neighbors")
    x, y = old_coords
    cx, cy = candidate_position(v, adjacency.neig_ptr, adjacency.neig, x, y, x, y, 0, 0)
    return float(cx), float(cy)


def candidate_position_form_b(
    v: int,
    live: Coords,
    snapshot: Coords,
    chunk: Tuple[int, int],
    adjacency: Adjacency,
) -> Point:
    """Mean of v's neighbors: live inside `chunk`, pass-start snapshot outside."""
    if len(adjacency.neighbors(v)) == 0:
        raise ValueError(f"vertex {v} has no neighbors")
    lo, hi = chunk
    cx, cy = candidate_position(
        v, adjacency.neig_ptr, adjacency.neig, live[0], live[1], snapshot[0], snapshot[1], lo, hi,
    )
    return float(cx), float(cy)


@dataclass(frozen=True)
class Decision:
    accepted: bool
    quality: float    # min incident α with v at the candidate
    previous: float   # v's stored min incident α


def smart_accept(
    v: int,
    candidate: Sequence[float],
    mesh: MeshStorage,
    adjacency: Adjacency,
    field: QualityField,
) -> Decision:
    """
    Move v to `candidate` iff that strictly raises its worst incident α.
    On accept v's coordinates and min_quality are updated in place.
    """
    previous = float(field.min_quality[v])
    # judged at storage precision: update_fused rounds both the candidate and α
    quality = update_fused(mesh, adjacency, v, candidate)
    accepted = quality > previous
    if accepted:
        mesh.x[v] = candidate[0]
        mesh.y[v] = candidate[1]
        field.min_quality[v] = quality
    return Decision(accepted, quality, previous)


# --- passes ------------------------------------------------------------------

@dataclass
class IterationState:
    """
    `x, y` always hold the latest coordinates. Form A keeps a second buffer
    in `spare_x, spare_y` and swaps after each pass; parallel Form B keeps a
    pass-start snapshot.
    """
    backend: Backend
    x: np.ndarray
    y: np.ndarray
    spare_x: Optional[np.ndarray] = None
    spare_y: Optional[np.ndarray] = None
    snap_x: Optional[np.ndarray] = None
    snap_y: Optional[np.ndarray] = None
    iteration: int = 0
    accepted: int = 0
    max_disp: float = 0.0

    @classmethod
    def start(cls, mesh: MeshStorage, config: SmoothConfig, backend: Backend) -> "IterationState":
        state = cls(backend=backend, x=mesh.x, y=mesh.y)
        if config.form == Form.A:
            state.spare_x, state.spare_y = coordinate_buffer(mesh)
        elif backend.workers > 1:
            state.snap_x = np.empty(mesh.n_vert, dtype=mesh.float_dtype)
            state.snap_y = np.empty(mesh.n_vert, dtype=mesh.float_dtype)
        return state

    @property
    def coords(self) -> Coords:
        return self.x, self.y

    def finish(self, mesh: MeshStorage) -> MeshStorage:
        """Leave the latest coordinates in the mesh's own fields."""
        if not np.may_share_memory(self.x, mesh.x):
            mesh.x[:] = self.x
            mesh.y[:] = self.y
            self.x, self.y = mesh.x, mesh.y
        return mesh


def run_iteration(
    mesh: MeshStorage,
    adjacency: Adjacency,
    field: QualityField,
    config: SmoothConfig,
    state: IterationState,
) -> IterationState:
    backend = state.backend
    if config.form == Form.A:
        rx, ry = state.x, state.y
        wx, wy = state.spare_x, state.spare_y
        sx, sy = rx, ry
    else:
        rx = wx = state.x
        ry = wy = state.y
        if state.snap_x is not None:
            state.snap_x[:] = state.x
            state.snap_y[:] = state.y
            sx, sy = state.snap_x, state.snap_y
        else:
            sx, sy = rx, ry

    a = adjacency
    tri, boundary, min_q = mesh.tri, mesh.boundary, field.min_quality
    write_min = config.strategy == Strategy.FUSED
    ftype = mesh.float_dtype

    def chunk(lo: int, hi: int):
        cand = np.empty(3, dtype=ftype)
        return smooth_chunk(
            lo, hi, a.neig_ptr, a.neig, a.loca_ptr, a.loca, tri, boundary,
            rx, ry, wx, wy, sx, sy, min_q, cand, config.smart, write_min,
        )

    results = backend.map(chunk, mesh.n_vert)
    state.accepted = int(sum(r[0] for r in results))
    state.max_disp = float(max((r[1] for r in results), default=0.0))

    if config.form == Form.A:
        state.x, state.spare_x = state.spare_x, state.x
        state.y, state.spare_y = state.spare_y, state.y

    if config.strategy == Strategy.TWO_PHASE:
        update_two_phase(mesh, adjacency, field, backend, coords=state.coords)
    else:
        refresh_fused(mesh, adjacency, field, backend, coords=state.coords)

    state.iteration += 1
    return state


def _alpha_summary(field: QualityField) -> Tuple[float, float]:
    return field.global_min(), field.global_mean()


def smooth(mesh: MeshStorage, config: Optional[SmoothConfig] = None) -> Tuple[MeshStorage, RunStats]:
    """
    Smooth a copy of `mesh`; the input is left untouched.

    Stops after max_iters passes, after a pass that accepts no move, or
    when the largest accepted move of a pass is shorter than
    move_tol × bounding-box diagonal.
    """
    config = config or SmoothConfig()
    work = mesh.copy()
    timer = PhaseTimer()
    stats = RunStats(precision=work.precision, config=config.to_dict())

    with config.make_backend() as backend:
        with timer.phase("init"):
            init_flags(work)
            field = compute_all_qualities(work, backend)
        with timer.phase("topo"):
            adjacency = find_neighbors(work)
            reduce_min_quality(work, adjacency, field, backend)
        with timer.phase("constr"):
            determine_constraints(work, adjacency, backend)

        stats.min_alpha_before, stats.mean_alpha_before = _alpha_summary(field)
        tol = config.move_tol * work.bbox_diagonal()

        with timer.phase("iter"):
            state = IterationState.start(work, config, backend)
            stats.stop_reason = STOP_MAX_ITERS
            for _ in range(config.max_iters):
                run_iteration(work, adjacency, field, config, state)
                stats.record_pass(state.accepted, state.max_disp, field.global_min())
                if state.accepted == 0:
                    stats.stop_reason = STOP_NO_MOVES
                    break
                if state.max_disp < tol:
                    stats.stop_reason = STOP_TOLERANCE
                    break
            state.finish(work)

    stats.min_alpha_after, stats.mean_alpha_after = _alpha_summary(field)
    stats.phase_ms = timer.summary()
    return work, stats


def prepare(mesh: MeshStorage, backend: Backend) -> Tuple[Adjacency, QualityField]:
    """Flags, qualities, adjacency and constraints in place, without smoothing."""
    init_flags(mesh)
    field = compute_all_qualities(mesh, backend)
    adjacency = find_neighbors(mesh)
    reduce_min_quality(mesh, adjacency, field, backend)
    determine_constraints(mesh, adjacency, backend)
    return adjacency, field
