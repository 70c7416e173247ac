"""
Incremental Bowyer–Watson Delaunay triangulation.

The bootstrap triangle is symbolic: a ghost vertex GHOST "at infinity"
closes every convex-hull edge (a, b) with a ghost triangle (a, b, GHOST),
so the triangulation always covers the plane and no far-away super
triangle has to be carved off (or leaves hull edges missing) at the end.

A real triangle conflicts with a new point p when p lies inside its
circumcircle (in-circle determinant > eps). A ghost triangle (a, b, GHOST)
conflicts when p lies strictly beyond its hull edge, or on the edge
between a and b. Conflicting triangles form the cavity; every cavity
boundary edge (u, v) is joined to p as (u, v, p).

Points are inserted in a snake order over a coarse grid so consecutive
points are close, and each point is located by walking from the last
triangle created.
"""
from __future__ import annotations

import math
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from mesh.errors import GenerationError

GHOST = -1
INCIRCLE_EPS = 1e-14

Tri = Tuple[int, int, int]


def orient(ax: float, ay: float, bx: float, by: float, cx: float, cy: float) -> float:
    """Twice the signed area of (a, b, c): positive when counter-clockwise."""
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)


def incircle(
    ax: float, ay: float, bx: float, by: float, cx: float, cy: float, px: float, py: float,
) -> float:
    """Positive when p is inside the circumcircle of the counter-clockwise (a, b, c)."""
    adx, ady = ax - px, ay - py
    bdx, bdy = bx - px, by - py
    cdx, cdy = cx - px, cy - py
    alift = adx * adx + ady * ady
    blift = bdx * bdx + bdy * bdy
    clift = cdx * cdx + cdy * cdy
    return (
        alift * (bdx * cdy - bdy * cdx)
        + blift * (cdx * ady - cdy * adx)
        + clift * (adx * bdy - ady * bdx)
    )


def insertion_order(points: np.ndarray) -> np.ndarray:
    """Row-by-row snake over a ~sqrt(n)/2 square grid of buckets."""
    n = len(points)
    k = max(1, int(math.sqrt(n) / 2))
    lo = points.min(axis=0)
    span = np.maximum(points.max(axis=0) - lo, 1e-300)
    cell = np.minimum(((points - lo) / span * k).astype(np.int64), k - 1)
    ix, iy = cell[:, 0], cell[:, 1]
    odd = (iy % 2) == 1
    snake_ix = np.where(odd, k - 1 - ix, ix)
    snake_x = np.where(odd, -points[:, 0], points[:, 0])
    return np.lexsort((snake_x, snake_ix, iy))


class _Triangulation:
    def __init__(self, px: List[float], py: List[float], eps: float):
        self.px = px
        self.py = py
        self.eps = eps
        self.tris: List[Tri] = []
        self.alive: List[bool] = []
        self.edge_tri: Dict[Tuple[int, int], int] = {}
        self.last = 0

    # --- bookkeeping -----------------------------------------------------

    def add(self, a: int, b: int, c: int) -> int:
        t = len(self.tris)
        self.tris.append((a, b, c))
        self.alive.append(True)
        self.edge_tri[(a, b)] = t
        self.edge_tri[(b, c)] = t
        self.edge_tri[(c, a)] = t
        if c != GHOST:
            self.last = t
        return t

    def kill(self, t: int) -> None:
        self.alive[t] = False
        a, b, c = self.tris[t]
        for e in ((a, b), (b, c), (c, a)):
            if self.edge_tri.get(e) == t:
                del self.edge_tri[e]

    # --- predicates ------------------------------------------------------

    def conflicts(self, t: int, x: float, y: float) -> bool:
        a, b, c = self.tris[t]
        px, py = self.px, self.py
        if c == GHOST:
            o = orient(px[a], py[a], px[b], py[b], x, y)
            if o > 0.0:
                return True
            if o < 0.0:
                return False
            # on the hull line: only between a and b
            dot_a = (x - px[a]) * (px[b] - px[a]) + (y - py[a]) * (py[b] - py[a])
            dot_b = (x - px[b]) * (px[a] - px[b]) + (y - py[b]) * (py[a] - py[b])
            return dot_a > 0.0 and dot_b > 0.0
        return incircle(px[a], py[a], px[b], py[b], px[c], py[c], x, y) > self.eps

    # --- point location --------------------------------------------------

    def locate(self, x: float, y: float) -> int:
        """A triangle in conflict with (x, y), found by a visibility walk."""
        px, py = self.px, self.py
        t = self.last
        for _ in range(4 * len(self.tris) + 16):
            a, b, c = self.tris[t]
            if c == GHOST:
                return t
            for u, v in ((a, b), (b, c), (c, a)):
                if orient(px[u], py[u], px[v], py[v], x, y) < 0.0:
                    t = self.edge_tri[(v, u)]
                    break
            else:
                return t
        for t, ok in enumerate(self.alive):
            if ok and self.conflicts(t, x, y):
                return t
        raise GenerationError(f"could not locate point ({x!r}, {y!r})")

    # --- insertion -------------------------------------------------------

    def _grow(self, seed: int, x: float, y: float, cavity: set, rejected: set) -> None:
        stack = [seed]
        cavity.add(seed)
        rejected.discard(seed)
        while stack:
            t = stack.pop()
            a, b, c = self.tris[t]
            for u, v in ((a, b), (b, c), (c, a)):
                n = self.edge_tri[(v, u)]
                if n in cavity or n in rejected:
                    continue
                if self.conflicts(n, x, y):
                    cavity.add(n)
                    stack.append(n)
                else:
                    rejected.add(n)

    def insert(self, p: int) -> None:
        x, y = self.px[p], self.py[p]
        cavity: set = set()
        rejected: set = set()
        self._grow(self.locate(x, y), x, y, cavity, rejected)

        while True:
            boundary: List[Tuple[int, int]] = []
            hidden: Optional[int] = None
            for t in sorted(cavity):
                a, b, c = self.tris[t]
                for u, v in ((a, b), (b, c), (c, a)):
                    n = self.edge_tri[(v, u)]
                    if n in cavity:
                        continue
                    boundary.append((u, v))
                    # every real boundary edge must see p, or (u, v, p) would fold over
                    if (
                        hidden is None and u != GHOST and v != GHOST
                        and self.tris[n][2] != GHOST
                        and orient(self.px[u], self.py[u], self.px[v], self.py[v], x, y) <= 0.0
                    ):
                        hidden = n
            if hidden is None:
                break
            self._grow(hidden, x, y, cavity, rejected)

        for t in cavity:
            self.kill(t)
        for u, v in boundary:
            if u == GHOST:
                self.add(v, p, GHOST)
            elif v == GHOST:
                self.add(p, u, GHOST)
            else:
                self.add(u, v, p)

    def real_triangles(self) -> List[Tri]:
        return [t for t, ok in zip(self.tris, self.alive) if ok and t[2] != GHOST]


def delaunay_triangulate(points: Sequence[Sequence[float]], eps: float = INCIRCLE_EPS) -> np.ndarray:
    """
    Delaunay triangulation of the convex hull of `points` as an (m, 3)
    array of counter-clockwise vertex index triples.
    """
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise GenerationError(f"points must be an (n, 2) array, got shape {pts.shape}")
    n = len(pts)
    if n < 3:
        raise GenerationError(f"need at least 3 points (got {n})")
    if not np.isfinite(pts).all():
        raise GenerationError("points must be finite")
    if len(np.unique(pts, axis=0)) != n:
        raise GenerationError("duplicate points")

    order = [int(i) for i in insertion_order(pts)]
    px = pts[:, 0].tolist()
    py = pts[:, 1].tolist()

    i0, i1 = order[0], order[1]
    k = None
    for j in order[2:]:
        if orient(px[i0], py[i0], px[i1], py[i1], px[j], py[j]) != 0.0:
            k = j
            break
    if k is None:
        raise GenerationError("all points are collinear")
    if orient(px[i0], py[i0], px[i1], py[i1], px[k], py[k]) < 0.0:
        i0, i1 = i1, i0

    tr = _Triangulation(px, py, eps)
    tr.add(i0, i1, k)
    tr.add(i1, i0, GHOST)
    tr.add(k, i1, GHOST)
    tr.add(i0, k, GHOST)
    tr.last = 0

    seeded = {i0, i1, k}
    for p in order:
        if p not in seeded:
            tr.insert(p)

    return np.array(tr.real_triangles(), dtype=np.int64).reshape(-1, 3)
