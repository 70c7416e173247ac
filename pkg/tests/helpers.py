import math
import os
import sys

# Ensure repo root is on path so package imports work when tests are run
REPO_ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), ".."))
if REPO_ROOT not in sys.path:
    sys.path.insert(0, REPO_ROOT)

import numpy as np

from mesh.storage import build_mesh
from meshgen.grid import perturbed_grid

SQRT3 = math.sqrt(3.0)


def single_triangle(layout="aos"):
    return build_mesh([(0.0, 0.0), (1.0, 0.0), (0.5, SQRT3 / 2)], [(0, 1, 2)], layout)


def unit_square(layout="aos"):
    """Unit square split on the (0,0)-(1,1) diagonal."""
    pts = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]
    return build_mesh(pts, [(0, 1, 2), (0, 2, 3)], layout)


def grid_mesh(rows=3, cols=3, perturbation=0.0, seed=0, layout="aos", float_dtype=np.float64):
    pts, tri = perturbed_grid(rows, cols, perturbation, seed)
    return build_mesh(pts, tri, layout, float_dtype=float_dtype)


def hex_corners(radius=1.0):
    return [(radius * math.cos(k * math.pi / 3), radius * math.sin(k * math.pi / 3)) for k in range(6)]


def hex_fan(center=None, layout="aos"):
    """
    Center vertex 0 and six corners 1..6. By default the center sits
    exactly at the mean of the corners (summed in index order), so it is
    its own Laplacian candidate.
    """
    corners = hex_corners()
    if center is None:
        sx = 0.0
        sy = 0.0
        for x, y in corners:
            sx += x
            sy += y
        center = (sx / 6, sy / 6)
    pts = [center] + corners
    tri = [(0, k, k % 6 + 1) for k in range(1, 7)]
    return build_mesh(pts, tri, layout)


def sliver_grid(layout="aos"):
    """3×3 grid with the center pushed down next to the bottom edge."""
    pts, tri = perturbed_grid(3, 3, 0.0, 0)
    pts[4] = (0.5, 0.02)
    return build_mesh(pts, tri, layout)


def brute_alpha(p1, p2, p3):
    """α from area and edge lengths, computed independently of the kernels."""
    (x1, y1), (x2, y2), (x3, y3) = p1, p2, p3
    area = 0.5 * ((x2 - x1) * (y3 - y1) - (y2 - y1) * (x3 - x1))
    l2 = (x2 - x1) ** 2 + (y2 - y1) ** 2 + (x3 - x2) ** 2 + (y3 - y2) ** 2 + (x1 - x3) ** 2 + (y1 - y3) ** 2
    return 0.0 if l2 == 0 else 4.0 * SQRT3 * area / l2


def brute_alphas(mesh):
    pts = mesh.points()
    return np.array([brute_alpha(*pts[list(t)]) for t in np.asarray(mesh.tri)])
