# quality/alpha.py
"""
Triangle shape quality α.

    α = 4√3 · A / (l1² + l2² + l3²)

A is the signed area (positive for counter-clockwise vertex order), so
α is 1 for an equilateral triangle, 0 for a degenerate one and negative
for an inverted one. Every kernel evaluates a triangle with its vertices
in stored order, so the same triangle gives bit-identical α whichever
vertex or task asks for it.
"""
from __future__ import annotations

import math
from typing import Sequence

import numpy as np
from numba import njit

# 4√3 · (cross / 2)
TWO_SQRT3 = 2.0 * math.sqrt(3.0)


@njit(cache=True, nogil=True)
def alpha_kernel(x0, y0, x1, y1, x2, y2):
    ax = x1 - x0
    ay = y1 - y0
    bx = x2 - x0
    by = y2 - y0
    cx = x2 - x1
    cy = y2 - y1
    cross = ax * by - ay * bx
    denom = ax * ax + ay * ay + bx * bx + by * by + cx * cx + cy * cy
    if denom == 0.0:
        return 0.0
    return TWO_SQRT3 * cross / denom


def triangle_alpha(p1: Sequence[float], p2: Sequence[float], p3: Sequence[float]) -> float:
    """α of one triangle; zero-area corners give 0, see triangle_is_degenerate."""
    return float(alpha_kernel(
        float(p1[0]), float(p1[1]),
        float(p2[0]), float(p2[1]),
        float(p3[0]), float(p3[1]),
    ))


def triangle_is_degenerate(p1: Sequence[float], p2: Sequence[float], p3: Sequence[float]) -> bool:
    """True when the three points are collinear or coincident (zero area)."""
    ax, ay = float(p2[0]) - float(p1[0]), float(p2[1]) - float(p1[1])
    bx, by = float(p3[0]) - float(p1[0]), float(p3[1]) - float(p1[1])
    return ax * by - ay * bx == 0.0


def degenerate_mask(tri: np.ndarray, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Per-triangle zero-area flag, evaluated in the coordinates' own dtype."""
    x0, y0 = x[tri[:, 0]], y[tri[:, 0]]
    cross = (x[tri[:, 1]] - x0) * (y[tri[:, 2]] - y0) - (y[tri[:, 1]] - y0) * (x[tri[:, 2]] - x0)
    return cross == 0


@njit(cache=True, nogil=True)
def triangle_alphas(lo, hi, tri, x, y, out):
    for t in range(lo, hi):
        a = tri[t, 0]
        b = tri[t, 1]
        c = tri[t, 2]
        out[t] = alpha_kernel(x[a], y[a], x[b], y[b], x[c], y[c])


@njit(cache=True, nogil=True)
def vertex_min_from_field(lo, hi, loca_ptr, loca, tri_q, min_q):
    for v in range(lo, hi):
        start = loca_ptr[v]
        stop = loca_ptr[v + 1]
        if start == stop:
            min_q[v] = np.nan
            continue
        m = np.inf
        for k in range(start, stop):
            q = tri_q[loca[k]]
            if q < m:
                m = q
        min_q[v] = m


@njit(cache=True, nogil=True)
def read_coord(p, lo, hi, x, y, sx, sy):
    """Inside [lo, hi) read the live buffer, elsewhere the snapshot."""
    if p >= lo and p < hi:
        return x[p], y[p]
    return sx[p], sy[p]


@njit(cache=True, nogil=True)
def local_min_alpha(v, cx, cy, loca_ptr, loca, tri, x, y, sx, sy, lo, hi):
    """
    Min α over the triangles incident to v, with v placed at (cx, cy) and
    every other vertex read through `read_coord`. +inf when v has no
    incident triangle.
    """
    m = np.inf
    for k in range(loca_ptr[v], loca_ptr[v + 1]):
        t = loca[k]
        a = tri[t, 0]
        b = tri[t, 1]
        c = tri[t, 2]
        if a == v:
            ax, ay = cx, cy
        else:
            ax, ay = read_coord(a, lo, hi, x, y, sx, sy)
        if b == v:
            bx, by = cx, cy
        else:
            bx, by = read_coord(b, lo, hi, x, y, sx, sy)
        if c == v:
            qx, qy = cx, cy
        else:
            qx, qy = read_coord(c, lo, hi, x, y, sx, sy)
        q = alpha_kernel(ax, ay, bx, by, qx, qy)
        if q < m:
            m = q
    return m


@njit(cache=True, nogil=True)
def fused_refresh(lo, hi, loca_ptr, loca, tri, x, y, tri_q, min_q):
    """
    Per-vertex refresh: every incident triangle is evaluated again for
    each of its vertices. A triangle's α slot is written only by the
    vertex in its first position, so chunks never write the same slot.
    """
    for v in range(lo, hi):
        start = loca_ptr[v]
        stop = loca_ptr[v + 1]
        if start == stop:
            min_q[v] = np.nan
            continue
        m = np.inf
        for k in range(start, stop):
            t = loca[k]
            a = tri[t, 0]
            b = tri[t, 1]
            c = tri[t, 2]
            q = alpha_kernel(x[a], y[a], x[b], y[b], x[c], y[c])
            if a == v:
                tri_q[t] = q
            if q < m:
                m = q
        min_q[v] = m
