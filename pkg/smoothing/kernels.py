"""
JIT kernels for one smoothing pass over a contiguous vertex chunk [lo, hi).

Buffers:
    rx, ry   coordinates candidates are read from
    wx, wy   coordinates results are written to
    sx, sy   what a neighbor outside [lo, hi) is read from

Form A passes (prev, next, prev): every read hits the previous pass.
Form B passes (live, live, snapshot): neighbors inside the chunk are read
live, the rest from the snapshot taken at pass start. With a single chunk
this is plain Gauss-Seidel.
"""
import math

from numba import njit

from quality.alpha import local_min_alpha, read_coord


@njit(cache=True, nogil=True)
def candidate_position(v, neig_ptr, neig, rx, ry, sx, sy, lo, hi):
    """Mean of v's deduplicated neighbors, summed in ascending neighbor order."""
    start = neig_ptr[v]
    stop = neig_ptr[v + 1]
    acc_x = 0.0
    acc_y = 0.0
    for k in range(start, stop):
        px, py = read_coord(neig[k], lo, hi, rx, ry, sx, sy)
        acc_x += px
        acc_y += py
    n = stop - start
    return acc_x / n, acc_y / n


@njit(cache=True, nogil=True)
def smooth_chunk(
    lo, hi,
    neig_ptr, neig, loca_ptr, loca, tri, boundary,
    rx, ry, wx, wy, sx, sy,
    min_q, cand, smart, write_min,
):
    """
    Returns (accepted moves, max displacement) for the chunk.

    `cand` is a 3-slot scratch array [x, y, q] in the storage dtype.
    Candidates and their local minimum α are rounded through it, so the
    move that is judged is the move that is stored and q is compared with
    min_q[v] at the precision min_q[v] was stored in. With `smart` a move
    is accepted only if it strictly raises the worst incident α above
    min_q[v]; `write_min` stores the new local minimum on accept.
    """
    accepted = 0
    max_disp = 0.0
    q = 0.0
    for v in range(lo, hi):
        ox = rx[v]
        oy = ry[v]
        if boundary[v] or neig_ptr[v + 1] == neig_ptr[v]:
            wx[v] = ox
            wy[v] = oy
            continue
        mx, my = candidate_position(v, neig_ptr, neig, rx, ry, sx, sy, lo, hi)
        cand[0] = mx
        cand[1] = my
        nx = cand[0]
        ny = cand[1]
        if smart:
            cand[2] = local_min_alpha(v, nx, ny, loca_ptr, loca, tri, rx, ry, sx, sy, lo, hi)
            q = cand[2]
            ok = q > min_q[v]
        else:
            ok = nx != ox or ny != oy
        if ok:
            wx[v] = nx
            wy[v] = ny
            if smart and write_min:
                min_q[v] = q
            accepted += 1
            dx = float(nx) - float(ox)
            dy = float(ny) - float(oy)
            d = math.sqrt(dx * dx + dy * dy)
            if d > max_disp:
                max_disp = d
        else:
            wx[v] = ox
            wy[v] = oy
    return accepted, max_disp
