from typing import Tuple, Union

import numpy as np

from mesh.storage import Layout, MeshStorage, build_mesh
from meshgen.delaunay import INCIRCLE_EPS, delaunay_triangulate, incircle, orient
from meshgen.grid import lattice_boundary, perturbed_grid
from meshgen.points import GenKind, GenSpec, generate_points, make_rng


def generate_arrays(spec: GenSpec) -> Tuple[np.ndarray, np.ndarray]:
    if spec.kind == GenKind.GRID:
        return perturbed_grid(spec.rows, spec.cols, spec.perturbation, spec.seed)
    pts = generate_points(spec)
    return pts, delaunay_triangulate(pts)


def generate_mesh(
    spec: GenSpec,
    layout: Union[Layout, str] = Layout.AOS,
    float_dtype=np.float64,
) -> MeshStorage:
    pts, tri = generate_arrays(spec)
    return build_mesh(pts, tri, layout, float_dtype=float_dtype)
