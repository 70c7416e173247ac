"""
Mesh storage in two physical layouts.

Both layouts hold the same logical content per vertex
(x, y, n_neig, n_loca, boundary, min_quality) and per triangle
(v_ids, quality):

- AoS: one numpy structured record per vertex / per triangle, so a
  field view such as ``verts["x"]`` is strided over interleaved records.
- SoA: one contiguous array per field.

Fields are always read through ``mesh.verts[name]`` / ``mesh.trgls[name]``,
which works for a structured array and for a dict of arrays alike. The
smoothing kernels only ever see those views, so the same code runs on
either layout.
"""
from __future__ import annotations

from enum import Enum
from typing import Dict, Iterable, Sequence, Union

import numpy as np

from mesh.errors import MeshStructureError

VERTEX_FIELDS = ("x", "y", "n_neig", "n_loca", "boundary", "min_quality")
TRIANGLE_FIELDS = ("v_ids", "quality")

# Quality slots that have not been computed yet.
UNSET_QUALITY = np.nan


class Layout(str, Enum):
    AOS = "aos"
    SOA = "soa"


def vertex_dtype(float_dtype=np.float64) -> np.dtype:
    f = np.dtype(float_dtype)
    return np.dtype([
        ("x", f),
        ("y", f),
        ("n_neig", np.int64),
        ("n_loca", np.int64),
        ("boundary", np.bool_),
        ("min_quality", f),
    ], align=True)


def triangle_dtype(float_dtype=np.float64) -> np.dtype:
    return np.dtype([("v_ids", np.int64, (3,)), ("quality", np.dtype(float_dtype))], align=True)


Columns = Union[np.ndarray, Dict[str, np.ndarray]]


def _alloc(layout: Layout, dtype: np.dtype, n: int) -> Columns:
    if layout == Layout.AOS:
        return np.zeros(n, dtype=dtype)
    return {name: np.zeros((n,) + dtype[name].shape, dtype=dtype[name].base) for name in dtype.names}


class MeshStorage:
    """A planar triangular mesh stored in one of the two layouts."""

    def __init__(self, layout: Layout, verts: Columns, trgls: Columns):
        self.layout = Layout(layout)
        self.verts = verts
        self.trgls = trgls

    # --- sizes -----------------------------------------------------------

    @property
    def n_vert(self) -> int:
        return len(self.verts["x"])

    @property
    def n_trgl(self) -> int:
        return len(self.trgls["quality"])

    @property
    def float_dtype(self) -> np.dtype:
        return self.verts["x"].dtype

    @property
    def precision(self) -> str:
        return "single" if self.float_dtype == np.float32 else "double"

    # --- field views -----------------------------------------------------

    @property
    def x(self) -> np.ndarray:
        return self.verts["x"]

    @property
    def y(self) -> np.ndarray:
        return self.verts["y"]

    @property
    def n_neig(self) -> np.ndarray:
        return self.verts["n_neig"]

    @property
    def n_loca(self) -> np.ndarray:
        return self.verts["n_loca"]

    @property
    def boundary(self) -> np.ndarray:
        return self.verts["boundary"]

    @property
    def min_quality(self) -> np.ndarray:
        return self.verts["min_quality"]

    @property
    def tri(self) -> np.ndarray:
        return self.trgls["v_ids"]

    @property
    def tri_quality(self) -> np.ndarray:
        return self.trgls["quality"]

    def points(self) -> np.ndarray:
        return np.column_stack([self.x, self.y]).astype(np.float64)

    def bbox_diagonal(self) -> float:
        if self.n_vert == 0:
            return 0.0
        dx = float(np.max(self.x)) - float(np.min(self.x))
        dy = float(np.max(self.y)) - float(np.min(self.y))
        return float(np.hypot(dx, dy))

    # --- copies / comparison ---------------------------------------------

    def copy(self) -> "MeshStorage":
        return convert_layout(self, self.layout)

    def logically_equal(self, other: "MeshStorage") -> bool:
        """Field-by-field equality regardless of layout (NaN == NaN for qualities)."""
        if self.n_vert != other.n_vert or self.n_trgl != other.n_trgl:
            return False
        for name in VERTEX_FIELDS:
            if not np.array_equal(self.verts[name], other.verts[name], equal_nan=name == "min_quality"):
                return False
        if not np.array_equal(self.tri, other.tri):
            return False
        return bool(np.array_equal(self.tri_quality, other.tri_quality, equal_nan=True))

    def __repr__(self) -> str:
        return f"MeshStorage(layout={self.layout.value}, n_vert={self.n_vert}, n_trgl={self.n_trgl}, precision={self.precision})"


def build_mesh(
    points: Sequence[Sequence[float]],
    triangles: Iterable[Sequence[int]],
    layout: Union[Layout, str] = Layout.AOS,
    float_dtype=np.float64,
) -> MeshStorage:
    """
    Build a pre-topology mesh: counters zero, no boundary flags, qualities unset.

    Vertices referenced by no triangle are kept; topology pins them later.
    """
    layout = Layout(layout)
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim != 2 or (len(pts) and pts.shape[1] != 2):
        raise MeshStructureError(f"points must be an (n, 2) array, got shape {pts.shape}")
    tri = np.asarray(list(triangles) if not isinstance(triangles, np.ndarray) else triangles, dtype=np.int64)
    if tri.size == 0:
        raise MeshStructureError("mesh needs at least one triangle")
    if tri.ndim != 2 or tri.shape[1] != 3:
        raise MeshStructureError(f"triangles must be an (m, 3) array, got shape {tri.shape}")

    n = len(pts)
    bad = np.flatnonzero((tri < 0).any(axis=1) | (tri >= n).any(axis=1))
    if len(bad):
        t = int(bad[0])
        raise MeshStructureError(f"triangle {t} {tri[t].tolist()} references a vertex outside 0..{n - 1}")
    dup = np.flatnonzero((tri[:, 0] == tri[:, 1]) | (tri[:, 1] == tri[:, 2]) | (tri[:, 0] == tri[:, 2]))
    if len(dup):
        t = int(dup[0])
        raise MeshStructureError(f"triangle {t} {tri[t].tolist()} repeats a vertex")

    vdt = vertex_dtype(float_dtype)
    tdt = triangle_dtype(float_dtype)
    verts = _alloc(layout, vdt, n)
    trgls = _alloc(layout, tdt, len(tri))

    verts["x"][:] = pts[:, 0]
    verts["y"][:] = pts[:, 1]
    verts["min_quality"][:] = UNSET_QUALITY
    trgls["v_ids"][:] = tri
    trgls["quality"][:] = UNSET_QUALITY
    return MeshStorage(layout, verts, trgls)


def init_flags(mesh: MeshStorage) -> MeshStorage:
    """No neighbors found yet, no incident triangles, every vertex free."""
    mesh.n_neig[:] = 0
    mesh.n_loca[:] = 0
    mesh.boundary[:] = False
    return mesh


def convert_layout(mesh: MeshStorage, target: Union[Layout, str]) -> MeshStorage:
    """Logically equal copy of `mesh` in `target` layout (a plain copy when unchanged)."""
    target = Layout(target)
    f = mesh.float_dtype
    verts = _alloc(target, vertex_dtype(f), mesh.n_vert)
    trgls = _alloc(target, triangle_dtype(f), mesh.n_trgl)
    for name in VERTEX_FIELDS:
        verts[name][:] = mesh.verts[name]
    for name in TRIANGLE_FIELDS:
        trgls[name][:] = mesh.trgls[name]
    return MeshStorage(target, verts, trgls)


def coordinate_buffer(mesh: MeshStorage):
    """
    A second (x, y) buffer in the mesh's own layout, initialised to the
    current coordinates. AoS buffers are interleaved records, SoA buffers
    are two arrays.
    """
    f = mesh.float_dtype
    if mesh.layout == Layout.AOS:
        buf = np.empty(mesh.n_vert, dtype=np.dtype([("x", f), ("y", f)], align=True))
    else:
        buf = {"x": np.empty(mesh.n_vert, dtype=f), "y": np.empty(mesh.n_vert, dtype=f)}
    buf["x"][:] = mesh.x
    buf["y"][:] = mesh.y
    return buf["x"], buf["y"]
