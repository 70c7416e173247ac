"""
Benchmark matrix: size × layout × form × strategy × backend.

Cells run one at a time. Each cell is run once to warm up (this also pays
for JIT compilation) and then `repeats` times; the reported times are
medians. A cell is only recorded once its output passed the preservation
checks and matched every cell that must give the same mesh:

- Form A: every layout, strategy and backend gives the same mesh;
- Form B: every layout and strategy gives the same mesh per backend.
"""
from __future__ import annotations

import os
import statistics
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from mesh.errors import InvariantViolation
from mesh.storage import Layout, MeshStorage, build_mesh
from mesh.triangle_io import read_triangle_files, triangle_paths, write_triangle_files
from meshgen import GenKind, GenSpec, generate_arrays
from report.speedup import add_speedups
from smoothing.backend import BackendKind, effective_workers
from smoothing.config import DEFAULT_MAX_ITERS, DEFAULT_MOVE_TOL, Form, SmoothConfig, Strategy
from smoothing.engine import smooth
from smoothing.stats import RunStats
from utils.report_writer import append_jsonl

DEFAULT_SIZES = (1000, 5000, 10000, 50000, 100000)
DEFAULT_REPEATS = 5
DEFAULT_SEED = 42
FIXTURES_ENV = "SMARTLAP_FIXTURES"
DEFAULT_FIXTURE_DIR = "fixtures"

LAYOUTS = (Layout.AOS, Layout.SOA)
FORMS = (Form.A, Form.B)
STRATEGIES = (Strategy.FUSED, Strategy.TWO_PHASE)
BACKENDS = (BackendKind.SERIAL, BackendKind.PARALLEL)

FLOAT_DTYPES = {"single": np.float32, "double": np.float64}

Say = Callable[[str], None]


def _quiet(_: str) -> None:
    pass


def parse_sizes(text: str) -> List[int]:
    """'1k,10k,2500' -> [1000, 10000, 2500]."""
    sizes = []
    for tok in str(text).split(","):
        tok = tok.strip().lower()
        if not tok:
            continue
        mult = 1
        if tok.endswith("k"):
            mult, tok = 1000, tok[:-1]
        elif tok.endswith("m"):
            mult, tok = 1_000_000, tok[:-1]
        try:
            value = int(float(tok) * mult)
        except ValueError:
            raise ValueError(f"bad mesh size {tok!r}") from None
        if value < 3:
            raise ValueError(f"mesh size must be >= 3 (got {value})")
        sizes.append(value)
    if not sizes:
        raise ValueError("no mesh sizes given")
    return sizes


def fixture_dir(path: Optional[str] = None) -> str:
    return path or os.environ.get(FIXTURES_ENV) or DEFAULT_FIXTURE_DIR


def load_fixture(size: int, seed: int = DEFAULT_SEED, cache_dir: Optional[str] = None) -> Tuple[np.ndarray, np.ndarray]:
    """Points and triangles of the seeded Delaunay fixture, generated once and cached as .node/.ele."""
    prefix = os.path.join(fixture_dir(cache_dir), f"delaunay_{size}_s{seed}")
    node_path, ele_path = triangle_paths(prefix)
    if os.path.exists(node_path) and os.path.exists(ele_path):
        mesh = read_triangle_files(node_path, ele_path)
        return mesh.points(), np.array(mesh.tri)
    pts, tri = generate_arrays(GenSpec(kind=GenKind.DELAUNAY, n_points=size, seed=seed))
    write_triangle_files(build_mesh(pts, tri), prefix)
    return pts, tri


# --- checks ------------------------------------------------------------------

def check_preservation(before: MeshStorage, after: MeshStorage) -> None:
    """Triangles unchanged, boundary coordinates bit-identical."""
    if not np.array_equal(before.tri, after.tri):
        raise InvariantViolation("triangle list changed")
    pinned = np.asarray(after.boundary, dtype=bool)
    if not (np.array_equal(before.x[pinned], after.x[pinned]) and np.array_equal(before.y[pinned], after.y[pinned])):
        moved = int(np.count_nonzero((before.x[pinned] != after.x[pinned]) | (before.y[pinned] != after.y[pinned])))
        raise InvariantViolation(f"{moved} boundary vertices moved")


def equivalence_key(size: int, config: SmoothConfig) -> Tuple:
    if config.form == Form.A:
        return size, Form.A.value
    return size, Form.B.value, config.backend.value


@dataclass
class Reference:
    label: str
    x: np.ndarray
    y: np.ndarray
    iterations: int


def check_equivalent(ref: Reference, mesh: MeshStorage, stats: RunStats) -> None:
    x = np.asarray(mesh.x)
    y = np.asarray(mesh.y)
    if stats.iterations != ref.iterations:
        raise InvariantViolation(f"{stats.iterations} iterations, {ref.label} took {ref.iterations}")
    if not (np.array_equal(x, ref.x) and np.array_equal(y, ref.y)):
        diff = int(np.count_nonzero((x != ref.x) | (y != ref.y)))
        raise InvariantViolation(f"{diff} vertices differ from {ref.label}")


# --- cells -------------------------------------------------------------------

def run_cell(mesh: MeshStorage, config: SmoothConfig, repeats: int = DEFAULT_REPEATS) -> Tuple[MeshStorage, RunStats, Dict[str, float]]:
    """
    Warm-up run plus `repeats` timed runs. Every run must give the same
    mesh; the returned times are per-phase medians.
    """
    if repeats < 1:
        raise ValueError(f"repeats must be >= 1 (got {repeats})")
    first, first_stats = smooth(mesh, config)
    timings: List[Dict[str, float]] = []
    for _ in range(repeats):
        out, stats = smooth(mesh, config)
        if not (np.array_equal(out.x, first.x) and np.array_equal(out.y, first.y)):
            raise InvariantViolation("repeated runs gave different meshes")
        timings.append(stats.phase_ms)
    medians = {k: float(statistics.median(t[k] for t in timings)) for k in timings[0]}
    return first, first_stats, medians


def cell_label(config: SmoothConfig, layout: Layout) -> str:
    backend = config.backend.value
    if config.backend == BackendKind.PARALLEL:
        backend += f"({config.workers})"
    return f"{layout.value}/{config.form.value}/{config.strategy.value}/{backend}"


def make_record(size: int, layout: Layout, config: SmoothConfig, stats: RunStats, times: Dict[str, float]) -> Dict[str, Any]:
    return {
        "size": int(size),
        "layout": layout.value,
        "form": config.form.value,
        "strategy": config.strategy.value,
        "backend": config.backend.value,
        "workers": config.effective_workers,
        "iterations": stats.iterations,
        "init_ms": round(times.get("init_ms", 0.0), 4),
        "topo_ms": round(times.get("topo_ms", 0.0), 4),
        "constr_ms": round(times.get("constr_ms", 0.0), 4),
        "iter_ms": round(times.get("iter_ms", 0.0), 4),
        "total_ms": round(times.get("total_ms", 0.0), 4),
        "min_alpha_before": stats.min_alpha_before,
        "min_alpha_after": stats.min_alpha_after,
        "mean_alpha_before": stats.mean_alpha_before,
        "mean_alpha_after": stats.mean_alpha_after,
        "speedup": None,
        "precision": stats.precision,
        "stop_reason": stats.stop_reason,
        "accepted": list(stats.accepted),
    }


@dataclass
class BenchResult:
    records: List[Dict[str, Any]] = field(default_factory=list)
    skipped: List[Dict[str, Any]] = field(default_factory=list)


def run_matrix(
    sizes: Sequence[int] = DEFAULT_SIZES,
    repeats: int = DEFAULT_REPEATS,
    workers: Optional[int] = None,
    precision: str = "double",
    max_iters: int = DEFAULT_MAX_ITERS,
    move_tol: float = DEFAULT_MOVE_TOL,
    seed: int = DEFAULT_SEED,
    cache_dir: Optional[str] = None,
    log_path: Optional[str] = None,
    say: Say = print,
    fixtures: Optional[Dict[int, Tuple[np.ndarray, np.ndarray]]] = None,
) -> BenchResult:
    """
    Runs every cell of the matrix in size → layout → form → strategy →
    backend order. `fixtures` maps size to (points, triangles) and
    overrides the cached Delaunay fixtures.
    """
    if precision not in FLOAT_DTYPES:
        raise ValueError(f"precision must be single or double (got {precision!r})")
    say = say or _quiet
    n_workers = effective_workers(workers)
    result = BenchResult()

    for size in sizes:
        say(f"▶ mesh size {size}")
        if fixtures and size in fixtures:
            pts, tri = fixtures[size]
        else:
            pts, tri = load_fixture(size, seed, cache_dir)
        refs: Dict[Tuple, Reference] = {}

        for layout in LAYOUTS:
            mesh = build_mesh(pts, tri, layout, float_dtype=FLOAT_DTYPES[precision])
            for form in FORMS:
                for strategy in STRATEGIES:
                    for backend in BACKENDS:
                        config = SmoothConfig(
                            form=form,
                            strategy=strategy,
                            backend=backend,
                            workers=n_workers if backend == BackendKind.PARALLEL else 1,
                            max_iters=max_iters,
                            move_tol=move_tol,
                        )
                        label = cell_label(config, layout)
                        try:
                            out, stats, times = run_cell(mesh, config, repeats)
                            check_preservation(mesh, out)
                            key = equivalence_key(size, config)
                            if key in refs:
                                check_equivalent(refs[key], out, stats)
                            else:
                                refs[key] = Reference(label, np.array(out.x), np.array(out.y), stats.iterations)
                        except InvariantViolation as e:
                            say(f"  ⚠️ {label}: skipped ({e})")
                            result.skipped.append({"size": int(size), "cell": label, "reason": str(e)})
                            continue

                        record = make_record(size, layout, config, stats, times)
                        result.records.append(record)
                        if log_path:
                            append_jsonl(log_path, record)
                        say(f"  ✔ {label}: {stats.iterations} iters, {record['total_ms']:.2f} ms")

    add_speedups(result.records)
    return result
