# meshgen/grid.py
from __future__ import annotations

from typing import Tuple

import numpy as np

from mesh.errors import GenerationError
from meshgen.points import MAX_PERTURBATION, make_rng


def lattice_boundary(rows: int, cols: int) -> np.ndarray:
    """True for vertices on the outer rows/columns, indexed r * cols + c."""
    r, c = np.divmod(np.arange(rows * cols), cols)
    return (r == 0) | (r == rows - 1) | (c == 0) | (c == cols - 1)


def perturbed_grid(
    rows: int,
    cols: int,
    perturbation: float = 0.0,
    seed: int = 0,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    rows × cols lattice on the unit square. Vertex (r, c) has index
    r * cols + c; interior vertices are shifted by up to ±perturbation of a
    cell in x and y, lattice-boundary vertices stay put. Each cell
    (r, c) gives two counter-clockwise triangles

        (r, c) (r, c+1) (r+1, c+1)   and   (r, c) (r+1, c+1) (r+1, c)
    """
    if rows < 2 or cols < 2:
        raise GenerationError(f"grid needs rows, cols >= 2 (got {rows}x{cols})")
    if not (0.0 <= perturbation <= MAX_PERTURBATION):
        raise GenerationError(f"perturbation must be in [0, {MAX_PERTURBATION}] (got {perturbation})")

    hx = 1.0 / (cols - 1)
    hy = 1.0 / (rows - 1)
    r, c = np.divmod(np.arange(rows * cols), cols)
    pts = np.column_stack([c * hx, r * hy]).astype(np.float64)

    interior = np.flatnonzero(~lattice_boundary(rows, cols))
    if perturbation > 0.0 and len(interior):
        shift = make_rng(seed).uniform(-perturbation, perturbation, size=(len(interior), 2))
        pts[interior, 0] += shift[:, 0] * hx
        pts[interior, 1] += shift[:, 1] * hy

    cr, cc = np.divmod(np.arange((rows - 1) * (cols - 1)), cols - 1)
    p00 = cr * cols + cc
    p10 = p00 + 1
    p01 = p00 + cols
    p11 = p01 + 1
    lower = np.stack([p00, p10, p11], axis=1)
    upper = np.stack([p00, p11, p01], axis=1)
    tri = np.stack([lower, upper], axis=1).reshape(-1, 3).astype(np.int64)
    return pts, tri
