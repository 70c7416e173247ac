"""
Vertex adjacency built from triangle connectivity.

All three per-vertex lists are stored CSR-style (a `*_ptr` offsets array
of length n_vert + 1 plus one flat index array):

- raw:  neighbor occurrences as recorded, one entry per (triangle, other
        vertex) visit, in triangle index order. Interior vertices see every
        neighbor exactly twice.
- neig: deduplicated neighbors, ascending.
- loca: incident triangles, ascending.

Smoothing reads `neig` and `loca`; `raw` only feeds boundary
classification.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence

import numpy as np
from numba import njit

from mesh.storage import MeshStorage
from smoothing.backend import SERIAL, Backend

# per triangle (a, b, c): a records b, c; b records a, c; c records a, b
_OWNER_SLOTS = [0, 0, 1, 1, 2, 2]
_OTHER_SLOTS = [1, 2, 0, 2, 0, 1]


def _offsets(counts: np.ndarray) -> np.ndarray:
    ptr = np.zeros(len(counts) + 1, dtype=np.int64)
    np.cumsum(counts, out=ptr[1:])
    return ptr


@dataclass(frozen=True)
class Adjacency:
    raw_ptr: np.ndarray
    raw: np.ndarray
    neig_ptr: np.ndarray
    neig: np.ndarray
    loca_ptr: np.ndarray
    loca: np.ndarray

    @property
    def n_vert(self) -> int:
        return len(self.neig_ptr) - 1

    def raw_neighbors(self, v: int) -> np.ndarray:
        return self.raw[self.raw_ptr[v]:self.raw_ptr[v + 1]]

    def neighbors(self, v: int) -> np.ndarray:
        return self.neig[self.neig_ptr[v]:self.neig_ptr[v + 1]]

    def incident(self, v: int) -> np.ndarray:
        return self.loca[self.loca_ptr[v]:self.loca_ptr[v + 1]]

    def neighbor_counts(self) -> np.ndarray:
        return np.diff(self.neig_ptr)

    def incident_counts(self) -> np.ndarray:
        return np.diff(self.loca_ptr)

    @classmethod
    def from_lists(
        cls,
        raw: Sequence[Sequence[int]],
        incident: Sequence[Sequence[int]],
    ) -> "Adjacency":
        """Build from explicit per-vertex lists; neighbors are deduplicated from `raw`."""
        if len(raw) != len(incident):
            raise ValueError("raw and incident lists must cover the same vertices")
        dedup = [sorted(set(int(u) for u in r)) for r in raw]

        def pack(lists: List[Sequence[int]]):
            counts = np.array([len(x) for x in lists], dtype=np.int64)
            flat = np.fromiter((int(u) for x in lists for u in x), dtype=np.int64, count=int(counts.sum()))
            return _offsets(counts), flat

        raw_ptr, raw_flat = pack(list(raw))
        neig_ptr, neig_flat = pack(dedup)
        loca_ptr, loca_flat = pack([sorted(int(t) for t in x) for x in incident])
        return cls(raw_ptr, raw_flat, neig_ptr, neig_flat, loca_ptr, loca_flat)


def find_neighbors(mesh: MeshStorage) -> Adjacency:
    """
    Single sequential pass over the triangles in index order. Also sets
    the mesh's n_neig / n_loca counters.
    """
    n = mesh.n_vert
    tri = np.ascontiguousarray(mesh.tri, dtype=np.int64)

    owner = tri[:, _OWNER_SLOTS].ravel()
    other = tri[:, _OTHER_SLOTS].ravel()
    order = np.argsort(owner, kind="stable")
    raw = other[order]
    raw_ptr = _offsets(np.bincount(owner, minlength=n))

    keys = np.unique(owner * n + other)
    neig_owner = keys // n
    neig = keys % n
    neig_ptr = _offsets(np.bincount(neig_owner, minlength=n))

    flat = tri.ravel()
    loca = np.argsort(flat, kind="stable") // 3
    loca_ptr = _offsets(np.bincount(flat, minlength=n))

    adjacency = Adjacency(raw_ptr, raw, neig_ptr, neig, loca_ptr, loca)
    mesh.n_neig[:] = adjacency.neighbor_counts()
    mesh.n_loca[:] = adjacency.incident_counts()
    return adjacency


@njit(cache=True, nogil=True)
def _classify(lo, hi, raw_ptr, raw, neig_ptr, neig, boundary):
    for v in range(lo, hi):
        r0 = raw_ptr[v]
        r1 = raw_ptr[v + 1]
        if r0 == r1:
            # referenced by no triangle: pinned
            boundary[v] = True
            continue
        flag = False
        for k in range(neig_ptr[v], neig_ptr[v + 1]):
            u = neig[k]
            seen = 0
            for j in range(r0, r1):
                if raw[j] == u:
                    seen += 1
            if seen != 2:
                flag = True
                break
        boundary[v] = flag


def determine_constraints(mesh: MeshStorage, adjacency: Adjacency, backend: Backend = SERIAL) -> MeshStorage:
    """
    A vertex is boundary iff some neighbor is not recorded exactly twice in
    its raw list. One vertex per task; each task writes only its own flag.
    """
    flags = mesh.boundary
    backend.map(
        lambda lo, hi: _classify(
            lo, hi, adjacency.raw_ptr, adjacency.raw, adjacency.neig_ptr, adjacency.neig, flags,
        ),
        mesh.n_vert,
    )
    return mesh


def _edge_counts(mesh: MeshStorage):
    tri = np.asarray(mesh.tri, dtype=np.int64)
    a = tri[:, [0, 1, 2]].ravel()
    b = tri[:, [1, 2, 0]].ravel()
    edges = np.stack([np.minimum(a, b), np.maximum(a, b)], axis=1)
    return np.unique(edges, axis=0, return_counts=True)


def boundary_oracle(mesh: MeshStorage) -> List[bool]:
    """
    Independent check for determine_constraints: a vertex is boundary iff
    it lies on an edge used by exactly one triangle. Vertices used by no
    triangle count as boundary too.
    """
    edges, counts = _edge_counts(mesh)
    flags = np.zeros(mesh.n_vert, dtype=bool)
    flags[edges[counts == 1].ravel()] = True
    used = np.zeros(mesh.n_vert, dtype=bool)
    used[np.asarray(mesh.tri).ravel()] = True
    flags[~used] = True
    return flags.tolist()


def non_manifold_edges(mesh: MeshStorage) -> int:
    """Edges shared by three or more triangles."""
    _, counts = _edge_counts(mesh)
    return int(np.count_nonzero(counts >= 3))


def isolated_vertices(mesh: MeshStorage) -> int:
    used = np.zeros(mesh.n_vert, dtype=bool)
    used[np.asarray(mesh.tri).ravel()] = True
    return int(np.count_nonzero(~used))
