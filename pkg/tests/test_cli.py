import io
import json
import os
import sys
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout

REPO_ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), ".."))
if REPO_ROOT not in sys.path:
    sys.path.insert(0, REPO_ROOT)

from mesh.triangle_io import read_triangle_files, write_triangle_files
from report.export import CSV_COLUMNS, read_report_json
from report.schema import validate_report
from scripts import smartlap
from tests.helpers import single_triangle


def run_cli(*argv):
    """(exit code, stdout, stderr) of one smartlap invocation."""
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        try:
            smartlap.main([str(a) for a in argv])
            code = 0
        except SystemExit as e:
            code = e.code
    return code, out.getvalue(), err.getvalue()


def read_bytes(path):
    with open(path, "rb") as f:
        return f.read()


class TestGen(unittest.TestCase):
    def test_delaunay_is_reproducible(self):
        with tempfile.TemporaryDirectory() as d:
            a, b = os.path.join(d, "a"), os.path.join(d, "b")
            for prefix in (a, b):
                code, out, _ = run_cli("gen", "--kind", "delaunay", "--n", 300, "--seed", 42, "-o", prefix)
                self.assertEqual(code, 0)
                self.assertIn("300 vertices", out)
            self.assertEqual(read_bytes(a + ".node"), read_bytes(b + ".node"))
            self.assertEqual(read_bytes(a + ".ele"), read_bytes(b + ".ele"))

    def test_grid_header(self):
        with tempfile.TemporaryDirectory() as d:
            prefix = os.path.join(d, "nested", "g")
            code, _, _ = run_cli("gen", "--kind", "grid", "--rows", 50, "--cols", 50, "--perturb", 0.3, "--seed", 7, "-o", prefix)
            self.assertEqual(code, 0)
            with open(prefix + ".node", encoding="utf-8") as f:
                self.assertEqual(f.readline().strip(), "2500 2 0 0")
            with open(prefix + ".ele", encoding="utf-8") as f:
                self.assertEqual(f.readline().strip(), f"{2 * 49 * 49} 3 0")

    def test_bad_grid_spec(self):
        with tempfile.TemporaryDirectory() as d:
            code, _, err = run_cli("gen", "--kind", "grid", "--rows", 1, "--cols", 4, "-o", os.path.join(d, "g"))
        self.assertEqual(code, 1)
        self.assertIn("[ERROR]", err)


class TestSmooth(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        self.prefix = os.path.join(self.tmp.name, "m")
        code, _, _ = run_cli("gen", "--n", 200, "--seed", 3, "-o", self.prefix)
        self.assertEqual(code, 0)

    def test_writes_smoothed_mesh(self):
        out_prefix = os.path.join(self.tmp.name, "out", "s")
        code, out, _ = run_cli("smooth", self.prefix, "--max-iters", 4, "-o", out_prefix)
        self.assertEqual(code, 0)
        self.assertIn("iterations", out)
        before = read_triangle_files(self.prefix + ".node", self.prefix + ".ele")
        after = read_triangle_files(out_prefix + ".node", out_prefix + ".ele")
        self.assertEqual(after.tri.tolist(), before.tri.tolist())
        self.assertFalse((after.x == before.x).all() and (after.y == before.y).all())

    def test_json_output(self):
        code, out, _ = run_cli(
            "smooth", self.prefix + ".node", self.prefix + ".ele",
            "--max-iters", 1, "--layout", "soa", "--strategy", "twophase", "--format", "json",
        )
        self.assertEqual(code, 0)
        stats = json.loads(out)
        self.assertEqual(stats["iterations"], 1)
        self.assertEqual(stats["stop_reason"], "max_iters")
        self.assertEqual(stats["config"]["strategy"], "twophase")
        self.assertGreaterEqual(stats["min_alpha_after"], stats["min_alpha_before"])
        for phase in ("init_ms", "topo_ms", "constr_ms", "iter_ms", "total_ms"):
            self.assertIn(phase, stats)

    def test_trace(self):
        trace = os.path.join(self.tmp.name, "trace.jsonl")
        code, _, _ = run_cli("smooth", self.prefix, "--max-iters", 3, "--form", "a", "--trace", trace, "--quiet")
        self.assertEqual(code, 0)
        with open(trace, encoding="utf-8") as f:
            passes = [json.loads(line) for line in f]
        self.assertGreaterEqual(len(passes), 1)
        self.assertLessEqual(len(passes), 3)
        self.assertEqual([p["pass"] for p in passes], list(range(1, len(passes) + 1)))

    def test_parallel_backend(self):
        code, out, _ = run_cli("smooth", self.prefix, "--backend", "parallel", "--workers", 2, "--max-iters", 2, "--format", "json")
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out)["config"]["workers"], 2)

    def test_rejects_zero_workers(self):
        code, _, err = run_cli("smooth", self.prefix, "--backend", "parallel", "--workers", 0)
        self.assertEqual(code, 1)
        self.assertIn("--workers", err)

    def test_missing_file(self):
        code, _, err = run_cli("smooth", os.path.join(self.tmp.name, "nope"))
        self.assertEqual(code, 1)
        self.assertIn("file not found", err)

    def test_parse_error_reports_line(self):
        node = os.path.join(self.tmp.name, "bad.node")
        ele = os.path.join(self.tmp.name, "bad.ele")
        with open(node, "w", encoding="utf-8") as f:
            f.write("3 2 0 0\n0 0 0\n1 one 0\n2 0 1\n")
        with open(ele, "w", encoding="utf-8") as f:
            f.write("1 3 0\n0 0 1 2\n")
        code, _, err = run_cli("smooth", node, ele)
        self.assertEqual(code, 1)
        self.assertIn(f"{node}:3:", err)


class TestQuality(unittest.TestCase):
    def test_equilateral_json(self):
        with tempfile.TemporaryDirectory() as d:
            prefix = os.path.join(d, "tri")
            write_triangle_files(single_triangle(), prefix)
            code, out, _ = run_cli("quality", prefix, "--format", "json")
            self.assertEqual(code, 0)
            audit = json.loads(out)
            self.assertAlmostEqual(audit["min_alpha"], 1.0, delta=1e-6)
            self.assertEqual(audit["n_trgl"], 1)
            self.assertEqual(audit["boundary_vertices"], 3)

            code, out, _ = run_cli("quality", prefix)
            self.assertEqual(code, 0)
            self.assertIn("non-positive α: 0", out)


class TestBench(unittest.TestCase):
    def test_small_matrix(self):
        with tempfile.TemporaryDirectory() as d:
            fixtures = os.path.join(d, "fixtures")
            out_dir = os.path.join(d, "results")
            code, out, _ = run_cli(
                "bench", "--sizes", 60, "--repeats", 1, "--workers", 2, "--max-iters", 3,
                "--fixtures", fixtures, "--out-dir", out_dir, "--quiet",
            )
            self.assertEqual(code, 0)
            self.assertIn("16 cells recorded, 0 skipped", out)
            self.assertTrue(os.path.exists(os.path.join(fixtures, "delaunay_60_s42.node")))
            with open(os.path.join(out_dir, "bench.csv"), encoding="utf-8") as f:
                lines = f.read().splitlines()
            self.assertEqual(lines[0], ",".join(CSV_COLUMNS))
            self.assertEqual(len(lines), 17)
            report = read_report_json(os.path.join(out_dir, "bench.json"))
            validate_report(report)
            self.assertEqual(report["meta"]["workers"], 2)
            self.assertTrue(os.path.exists(os.path.join(out_dir, "bench.md")))

    def test_trend(self):
        with tempfile.TemporaryDirectory() as d:
            path = os.path.join(d, "trend.csv")
            code, out, _ = run_cli(
                "bench", "--trend-seeds", 2, "--trend-size", 80, "--max-iters", 5,
                "--trend-out", path, "--quiet",
            )
            self.assertEqual(code, 0)
            self.assertIn("of 2 fixtures", out)
            with open(path, encoding="utf-8") as f:
                self.assertEqual(len(f.read().splitlines()), 3)


if __name__ == "__main__":
    unittest.main()
