import os
import sys
import unittest

REPO_ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), ".."))
if REPO_ROOT not in sys.path:
    sys.path.insert(0, REPO_ROOT)

import numpy as np

from mesh.storage import build_mesh
from meshgen import GenSpec, generate_mesh
from quality.audit import HISTOGRAM_BINS, audit_mesh
from quality.field import (
    QualityField,
    compute_all_qualities,
    min_incident_quality,
    refresh_fused,
    update_fused,
    update_two_phase,
)
from smoothing.backend import SERIAL, Backend, BackendKind
from smoothing.engine import prepare
from tests.helpers import SQRT3, brute_alphas, grid_mesh, hex_fan, single_triangle, sliver_grid, unit_square


class TestComputeAll(unittest.TestCase):
    def test_single_equilateral(self):
        field = compute_all_qualities(single_triangle())
        self.assertEqual(len(field.alpha), 1)
        self.assertAlmostEqual(float(field.alpha[0]), 1.0, delta=1e-6)

    def test_unit_square_halves(self):
        field = compute_all_qualities(unit_square())
        np.testing.assert_allclose(field.alpha, [SQRT3 / 2, SQRT3 / 2], atol=1e-12)

    def test_writes_into_mesh_in_both_layouts(self):
        for layout in ("aos", "soa"):
            m = grid_mesh(4, 5, 0.3, seed=2, layout=layout)
            compute_all_qualities(m)
            np.testing.assert_allclose(m.tri_quality, brute_alphas(m), atol=1e-12)

    def test_parallel_is_bit_identical(self):
        m = generate_mesh(GenSpec(kind="delaunay", n_points=1000, seed=3))
        serial = np.array(compute_all_qualities(m).alpha)
        with Backend(BackendKind.PARALLEL, 4) as backend:
            parallel = np.array(compute_all_qualities(m, backend).alpha)
        np.testing.assert_array_equal(serial, parallel)


class TestMinIncident(unittest.TestCase):
    def test_single_triangle(self):
        m = single_triangle()
        adj, field = prepare(m, SERIAL)
        self.assertEqual(min_incident_quality(m, adj, 0, field), float(field.alpha[0]))

    def test_sliver_dominates(self):
        m = sliver_grid()
        adj, field = prepare(m, SERIAL)
        expected = brute_alphas(m)[adj.incident(4)].min()
        self.assertAlmostEqual(min_incident_quality(m, adj, 4, field), expected, places=12)
        self.assertLess(min_incident_quality(m, adj, 4, field), 0.2)

    def test_equilateral_fan(self):
        m = hex_fan()
        adj, field = prepare(m, SERIAL)
        self.assertAlmostEqual(min_incident_quality(m, adj, 0, field), 1.0, delta=1e-9)

    def test_synchronized_min_quality(self):
        m = grid_mesh(6, 6, 0.4, seed=8)
        adj, field = prepare(m, SERIAL)
        for v in range(m.n_vert):
            self.assertEqual(float(m.min_quality[v]), min_incident_quality(m, adj, v, field))

    def test_isolated_vertex_raises(self):
        m = build_mesh([(0, 0), (1, 0), (0, 1), (3, 3)], [(0, 1, 2)])
        adj, field = prepare(m, SERIAL)
        self.assertTrue(np.isnan(m.min_quality[3]))
        with self.assertRaises(ValueError):
            min_incident_quality(m, adj, 3, field)


class TestUpdateFused(unittest.TestCase):
    def test_no_move_identity(self):
        m = grid_mesh(5, 5, 0.3, seed=4)
        adj, field = prepare(m, SERIAL)
        for v in (6, 12, 18):
            here = (float(m.x[v]), float(m.y[v]))
            self.assertEqual(update_fused(m, adj, v, here), min_incident_quality(m, adj, v, field))

    def test_fan_center_improves_perturbed_start(self):
        m = hex_fan(center=(0.35, -0.2))
        adj, field = prepare(m, SERIAL)
        before = float(field.min_quality[0])
        after = update_fused(m, adj, 0, (0.0, 0.0))
        self.assertGreater(after, before)
        expected = build_mesh([(0.0, 0.0)] + m.points()[1:].tolist(), np.asarray(m.tri))
        self.assertAlmostEqual(after, brute_alphas(expected).min(), places=12)

    def test_inverting_candidate_is_negative(self):
        m = hex_fan()
        adj, _ = prepare(m, SERIAL)
        self.assertLess(update_fused(m, adj, 0, (3.0, 0.0)), 0.0)

    def test_does_not_write(self):
        m = hex_fan(center=(0.2, 0.1))
        adj, field = prepare(m, SERIAL)
        snapshot = m.copy()
        update_fused(m, adj, 0, (0.0, 0.0))
        self.assertTrue(m.logically_equal(snapshot))

    def test_rejects_non_finite_candidate(self):
        m = hex_fan()
        adj, _ = prepare(m, SERIAL)
        with self.assertRaises(ValueError):
            update_fused(m, adj, 0, (float("nan"), 0.0))


class TestBulkUpdates(unittest.TestCase):
    def test_two_phase_without_movement_is_unchanged(self):
        m = grid_mesh(6, 7, 0.3, seed=5)
        adj, field = prepare(m, SERIAL)
        before = m.copy()
        update_two_phase(m, adj, field)
        self.assertTrue(m.logically_equal(before))

    def test_two_phase_after_movement(self):
        m = grid_mesh(6, 7, 0.3, seed=5)
        adj, field = prepare(m, SERIAL)
        m.x[9] += 0.05
        m.y[16] -= 0.03
        update_two_phase(m, adj, field)
        np.testing.assert_array_equal(field.alpha, compute_all_qualities(m.copy()).alpha)
        for v in range(m.n_vert):
            self.assertEqual(float(m.min_quality[v]), min_incident_quality(m, adj, v, field))

    def test_fused_refresh_matches_two_phase(self):
        m = generate_mesh(GenSpec(kind="delaunay", n_points=1000, seed=6))
        adj, field = prepare(m, SERIAL)
        rng = np.random.default_rng(0)
        free = np.flatnonzero(~m.boundary)
        m.x[free] += rng.uniform(-1e-3, 1e-3, len(free))
        m.y[free] += rng.uniform(-1e-3, 1e-3, len(free))

        other = m.copy()
        other_field = QualityField.of(other)
        update_two_phase(m, adj, field)
        with Backend(BackendKind.PARALLEL, 3) as backend:
            refresh_fused(other, adj, other_field, backend)
        np.testing.assert_array_equal(field.alpha, other_field.alpha)
        np.testing.assert_array_equal(field.min_quality, other_field.min_quality)


class TestAudit(unittest.TestCase):
    def test_single_equilateral(self):
        audit = audit_mesh(single_triangle())
        for v in (audit.min_alpha, audit.mean_alpha, audit.max_alpha):
            self.assertAlmostEqual(v, 1.0, delta=1e-6)
        self.assertEqual(audit.boundary_vertices, 3)
        self.assertEqual(audit.interior_vertices, 0)
        self.assertEqual(len(audit.histogram), HISTOGRAM_BINS)
        self.assertEqual(audit.histogram[-1], 1)

    def test_inverted_triangle_counted(self):
        m = build_mesh([(0, 0), (1, 0), (1, 1), (0, 1)], [(0, 1, 2), (0, 3, 2)])
        audit = audit_mesh(m)
        self.assertEqual(audit.non_positive, 1)
        self.assertEqual(sum(audit.histogram), 2)
        self.assertEqual(audit.degenerate, 0)

    def test_coincident_and_collinear_triangles_counted(self):
        pts = [(0, 0), (0, 0), (0, 0), (1, 0), (0, 1), (2, 0)]
        m = build_mesh(pts, [(0, 1, 2), (0, 3, 4), (0, 3, 5)])
        audit = audit_mesh(m)
        self.assertEqual(audit.degenerate, 2)
        self.assertEqual(audit.non_positive, 2)
        self.assertEqual(audit.to_dict()["degenerate"], 2)

    def test_does_not_modify_input(self):
        m = grid_mesh(4, 4, 0.3, seed=1)
        before = m.copy()
        audit = audit_mesh(m)
        self.assertTrue(m.logically_equal(before))
        self.assertEqual(audit.interior_vertices, 4)
        self.assertEqual(audit.to_dict()["n_trgl"], 18)


if __name__ == "__main__":
    unittest.main()
