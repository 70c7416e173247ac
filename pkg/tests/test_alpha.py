import math
import os
import sys
import unittest

REPO_ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), ".."))
if REPO_ROOT not in sys.path:
    sys.path.insert(0, REPO_ROOT)

import numpy as np
from hypothesis import assume, given, settings, strategies as st

from quality.alpha import degenerate_mask, triangle_alpha, triangle_alphas, triangle_is_degenerate
from tests.helpers import SQRT3, brute_alpha

coord = st.floats(min_value=-100.0, max_value=100.0, allow_nan=False, allow_infinity=False)
point = st.tuples(coord, coord)


class TestTriangleAlpha(unittest.TestCase):
    def test_equilateral_is_one(self):
        self.assertAlmostEqual(triangle_alpha((0, 0), (1, 0), (0.5, SQRT3 / 2)), 1.0, delta=1e-6)

    def test_collinear_is_zero(self):
        self.assertEqual(triangle_alpha((0, 0), (1, 0), (2, 0)), 0.0)

    def test_right_isoceles(self):
        self.assertAlmostEqual(triangle_alpha((0, 0), (1, 0), (0, 1)), SQRT3 / 2, delta=1e-6)

    def test_reversed_order_is_negative(self):
        self.assertAlmostEqual(triangle_alpha((0, 0), (0, 1), (1, 0)), -SQRT3 / 2, delta=1e-6)

    def test_coincident_points_give_zero(self):
        self.assertEqual(triangle_alpha((3, 3), (3, 3), (3, 3)), 0.0)

    def test_degenerate_flag(self):
        self.assertTrue(triangle_is_degenerate((3, 3), (3, 3), (3, 3)))
        self.assertTrue(triangle_is_degenerate((0, 0), (0, 0), (1, 2)))
        self.assertTrue(triangle_is_degenerate((0, 0), (1, 0), (2, 0)))
        self.assertFalse(triangle_is_degenerate((0, 0), (1, 0), (0, 1)))
        self.assertFalse(triangle_is_degenerate((0, 0), (0, 1), (1, 0)))

    def test_degenerate_mask(self):
        x = np.array([0.0, 1.0, 0.0, 2.0, 0.0])
        y = np.array([0.0, 0.0, 1.0, 0.0, 0.0])
        tri = np.array([[0, 1, 2], [0, 1, 3], [0, 4, 2], [0, 2, 1]], dtype=np.int64)
        self.assertEqual(degenerate_mask(tri, x, y).tolist(), [False, True, True, False])

    def test_matches_area_over_edges(self):
        p = ((0.1, 0.2), (2.0, -0.3), (0.7, 1.9))
        self.assertAlmostEqual(triangle_alpha(*p), brute_alpha(*p), places=12)

    def test_never_above_one(self):
        rng = np.random.default_rng(7)
        n = 10_000
        xy = rng.uniform(-1.0, 1.0, size=(3 * n, 2))
        tri = np.arange(3 * n, dtype=np.int64).reshape(n, 3)
        out = np.empty(n)
        triangle_alphas(0, n, tri, xy[:, 0].copy(), xy[:, 1].copy(), out)
        self.assertLessEqual(out.max(), 1.0 + 1e-9)
        self.assertGreaterEqual(out.min(), -1.0 - 1e-9)

    def test_strided_views_give_same_values(self):
        rec = np.zeros(3, dtype=np.dtype([("x", "f8"), ("y", "f8"), ("pad", "i8")], align=True))
        rec["x"] = [0.0, 1.0, 0.2]
        rec["y"] = [0.0, 0.1, 0.9]
        tri = np.array([[0, 1, 2]], dtype=np.int64)
        a = np.empty(1)
        b = np.empty(1)
        triangle_alphas(0, 1, tri, rec["x"], rec["y"], a)
        triangle_alphas(0, 1, tri, rec["x"].copy(), rec["y"].copy(), b)
        self.assertEqual(a[0], b[0])


class TestAlphaProperties(unittest.TestCase):
    @settings(max_examples=200, deadline=None)
    @given(point, point, point, st.floats(min_value=0.01, max_value=100.0),
           st.floats(min_value=0.0, max_value=2 * math.pi), coord, coord)
    def test_similarity_invariance(self, p1, p2, p3, k, theta, tx, ty):
        base = triangle_alpha(p1, p2, p3)
        # skip near-degenerate input where rounding dominates
        edges = [math.dist(p1, p2), math.dist(p2, p3), math.dist(p3, p1)]
        assume(min(edges) > 1e-2 and abs(base) > 1e-3)
        c, s = math.cos(theta), math.sin(theta)

        def move(p):
            x, y = p
            return (k * (c * x - s * y) + tx, k * (s * x + c * y) + ty)

        moved = triangle_alpha(move(p1), move(p2), move(p3))
        self.assertAlmostEqual(moved, base, delta=1e-6 * max(1.0, abs(base)) + 1e-6)

    @settings(max_examples=200, deadline=None)
    @given(point, point, point)
    def test_orientation_reversal_flips_sign(self, p1, p2, p3):
        self.assertAlmostEqual(triangle_alpha(p1, p3, p2), -triangle_alpha(p1, p2, p3), delta=1e-9)

    @settings(max_examples=200, deadline=None)
    @given(point, point, point)
    def test_bounded(self, p1, p2, p3):
        a = triangle_alpha(p1, p2, p3)
        self.assertLessEqual(abs(a), 1.0 + 1e-9)


if __name__ == "__main__":
    unittest.main()
