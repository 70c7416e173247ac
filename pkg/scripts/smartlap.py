#!/usr/bin/env python3
"""
Smart Laplacian smoothing command line.

Subcommands:
  gen      generate a Delaunay or perturbed-grid fixture (.node/.ele)
  smooth   smooth a .node/.ele mesh and print run statistics
  quality  print a quality audit of a mesh
  bench    run the layout × form × strategy × backend matrix

Usage:
  python scripts/smartlap.py gen --kind delaunay --n 1000 --seed 42 -o m1k
  python scripts/smartlap.py gen --kind grid --rows 50 --cols 50 --perturb 0.3 --seed 7 -o g
  python scripts/smartlap.py smooth m1k.node m1k.ele --form b --layout aos --backend serial -o out
  python scripts/smartlap.py quality out.node out.ele
  python scripts/smartlap.py bench --sizes 1k,10k --repeats 3
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional, Tuple

# Allow running as a script from repo root: python scripts/smartlap.py ...
REPO_ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), ".."))
if REPO_ROOT not in sys.path:
    sys.path.insert(0, REPO_ROOT)

from dotenv import load_dotenv

from mesh.errors import GenerationError, MeshStructureError, TriangleFormatError
from mesh.storage import Layout
from mesh.triangle_io import read_triangle_files, triangle_paths, write_triangle_files
from meshgen import GenSpec, generate_mesh
from quality.audit import audit_mesh
from report.export import build_report, write_csv, write_report_json
from report.schema import validate_report
from report.summary import write_markdown
from runners.bench import DEFAULT_REPEATS, DEFAULT_SEED, FLOAT_DTYPES, parse_sizes, run_matrix
from runners.trend import DEFAULT_TREND_SIZE, compare_forms, trend_summary, write_trend_csv
from smoothing.backend import BackendKind, effective_workers
from smoothing.config import DEFAULT_MAX_ITERS, DEFAULT_MOVE_TOL, Form, SmoothConfig, Strategy
from smoothing.engine import smooth
from utils.report_writer import append_jsonl

DEFAULT_BENCH_DIR = "results"


def fail(msg: str) -> None:
    print(f"[ERROR] {msg}", file=sys.stderr)
    sys.exit(1)


def _say(quiet: bool):
    return (lambda _msg: None) if quiet else print


def _input_paths(inputs: List[str]) -> Tuple[str, str]:
    """Either `<prefix>` or `<file.node> <file.ele>`."""
    if len(inputs) == 1:
        stem = inputs[0]
        if stem.endswith(".node") or stem.endswith(".ele"):
            stem = stem.rsplit(".", 1)[0]
        return triangle_paths(stem)
    if len(inputs) == 2:
        return inputs[0], inputs[1]
    fail("expected a mesh prefix or a .node and an .ele path")


def _read_mesh(inputs: List[str], layout: str = "aos", precision: str = "double"):
    node_path, ele_path = _input_paths(inputs)
    for p in (node_path, ele_path):
        if not os.path.exists(p):
            fail(f"file not found: {p}")
    return read_triangle_files(node_path, ele_path, layout, float_dtype=FLOAT_DTYPES[precision])


# --- gen ---------------------------------------------------------------------

def cmd_gen(args: argparse.Namespace) -> int:
    spec = GenSpec(
        kind=args.kind,
        n_points=args.n,
        rows=args.rows,
        cols=args.cols,
        seed=args.seed,
        perturbation=args.perturb,
    )
    mesh = generate_mesh(spec)
    try:
        node_path, ele_path = write_triangle_files(mesh, args.out)
    except OSError as e:
        fail(f"cannot write {args.out}: {e}")
    print(f"✔ {spec.kind.value}: {mesh.n_vert} vertices, {mesh.n_trgl} triangles")
    print(f"   → {node_path}")
    print(f"   → {ele_path}")
    return 0


# --- smooth ------------------------------------------------------------------

def smooth_config(args: argparse.Namespace) -> SmoothConfig:
    workers = effective_workers(args.workers) if args.backend == BackendKind.PARALLEL.value else 1
    return SmoothConfig(
        form=args.form,
        strategy=args.strategy,
        backend=args.backend,
        workers=workers,
        max_iters=args.max_iters,
        move_tol=args.move_tol,
        smart=not args.plain,
    )


def cmd_smooth(args: argparse.Namespace) -> int:
    say = _say(args.quiet or args.format == "json")
    config = smooth_config(args)
    mesh = _read_mesh(args.inputs, args.layout, args.precision)
    say(f"▶ smoothing {mesh.n_vert} vertices, {mesh.n_trgl} triangles")
    say("-" * 60)

    out, stats = smooth(mesh, config)

    if args.out:
        try:
            node_path, ele_path = write_triangle_files(out, args.out)
        except OSError as e:
            fail(f"cannot write {args.out}: {e}")
        say(f"   → {node_path}")
        say(f"   → {ele_path}")
    if args.trace:
        if os.path.exists(args.trace):
            os.remove(args.trace)
        for rec in stats.passes():
            append_jsonl(args.trace, rec)

    if args.format == "json":
        print(json.dumps(stats.to_dict(), indent=2))
        return 0
    ms = stats.phase_ms
    print(f"✔ {stats.iterations} iterations (stopped: {stats.stop_reason})")
    print(
        f"   init {ms['init_ms']:.2f} ms | topo {ms['topo_ms']:.2f} ms | "
        f"constr {ms['constr_ms']:.2f} ms | iter {ms['iter_ms']:.2f} ms | total {ms['total_ms']:.2f} ms"
    )
    print(f"   min α  {stats.min_alpha_before:.6f} → {stats.min_alpha_after:.6f}")
    print(f"   mean α {stats.mean_alpha_before:.6f} → {stats.mean_alpha_after:.6f}")
    return 0


# --- quality -----------------------------------------------------------------

def cmd_quality(args: argparse.Namespace) -> int:
    audit = audit_mesh(_read_mesh(args.inputs, args.layout, args.precision))
    if args.format == "json":
        print(json.dumps(audit.to_dict(), indent=2))
        return 0
    print(f"▶ {audit.n_vert} vertices, {audit.n_trgl} triangles")
    print("-" * 60)
    print(f"   α min {audit.min_alpha:.6f} | mean {audit.mean_alpha:.6f} | max {audit.max_alpha:.6f}")
    print(f"   non-positive α: {audit.non_positive}")
    if audit.degenerate:
        print(f"   ⚠️ degenerate triangles: {audit.degenerate}")
    print(f"   boundary vertices: {audit.boundary_vertices} | interior: {audit.interior_vertices}")
    if audit.non_manifold_edges:
        print(f"   ⚠️ non-manifold edges: {audit.non_manifold_edges}")
    if audit.isolated_vertices:
        print(f"   ⚠️ isolated vertices: {audit.isolated_vertices}")
    peak = max(audit.histogram) or 1
    for i, count in enumerate(audit.histogram):
        lo, hi = audit.bin_edges[i], audit.bin_edges[i + 1]
        bar = "#" * int(round(40 * count / peak))
        print(f"   [{lo:+.1f}, {hi:+.1f}) {count:>8} {bar}")
    return 0


# --- bench -------------------------------------------------------------------

def cmd_bench(args: argparse.Namespace) -> int:
    say = _say(args.quiet)
    if args.trend_seeds:
        say(f"▶ Form A vs Form B: {args.trend_seeds} fixtures of {args.trend_size} points")
        say("-" * 60)
        df = compare_forms(
            seeds=args.trend_seeds,
            size=args.trend_size,
            max_iters=args.max_iters,
            move_tol=args.move_tol,
            first_seed=args.seed,
            say=say,
        )
        summary = trend_summary(df)
        print(f"✔ Form B needed ≤ Form A's iterations on {summary['b_not_slower']} of {summary['fixtures']} fixtures")
        print(f"   mean iterations ratio A/B: {summary['mean_ratio']}")
        if args.trend_out:
            say(f"   → {write_trend_csv(df, args.trend_out)}")
        return 0

    sizes = parse_sizes(args.sizes)
    say(f"▶ Benchmark: sizes {sizes}, {args.repeats} repeats, {args.precision} precision")
    say("-" * 60)
    result = run_matrix(
        sizes=sizes,
        repeats=args.repeats,
        workers=args.workers,
        precision=args.precision,
        max_iters=args.max_iters,
        move_tol=args.move_tol,
        seed=args.seed,
        cache_dir=args.fixtures,
        log_path=args.log,
        say=say,
    )
    report = build_report(result.records, {
        "sizes": sizes,
        "repeats": args.repeats,
        "workers": effective_workers(args.workers),
        "precision": args.precision,
        "max_iters": args.max_iters,
        "move_tol": args.move_tol,
        "skipped": result.skipped,
    })
    validate_report(report)

    out_dir = args.out_dir
    csv_path = write_csv(result.records, os.path.join(out_dir, "bench.csv"))
    json_path = write_report_json(report, os.path.join(out_dir, "bench.json"))
    md_path = write_markdown(result.records, os.path.join(out_dir, "bench.md"))

    print(f"\n✅ {len(result.records)} cells recorded, {len(result.skipped)} skipped:")
    print(f"   → {csv_path}")
    print(f"   → {json_path}")
    print(f"   → {md_path}")
    return 1 if result.skipped else 0


# --- arguments ---------------------------------------------------------------

def _add_mesh_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("inputs", nargs="+", help="<prefix> or <file.node> <file.ele>")
    p.add_argument("--layout", choices=[l.value for l in Layout], default=Layout.AOS.value)
    p.add_argument("--precision", choices=sorted(FLOAT_DTYPES), default="double")


def _add_run_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-iters", type=int, default=DEFAULT_MAX_ITERS)
    p.add_argument("--move-tol", type=float, default=DEFAULT_MOVE_TOL,
                   help="stop when the largest move is below this fraction of the bbox diagonal")


def parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    ap = argparse.ArgumentParser(prog="smartlap", description="Smart Laplacian smoothing of 2D triangle meshes")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a fixture mesh")
    g.add_argument("--kind", choices=["delaunay", "grid"], default="delaunay")
    g.add_argument("--n", type=int, default=1000, help="points (delaunay)")
    g.add_argument("--rows", type=int, default=0, help="lattice rows (grid)")
    g.add_argument("--cols", type=int, default=0, help="lattice columns (grid)")
    g.add_argument("--perturb", type=float, default=0.0, help="interior shift, fraction of a cell (grid)")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--out", required=True, help="output prefix")
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("smooth", help="smooth a mesh")
    _add_mesh_options(s)
    _add_run_options(s)
    s.add_argument("--form", choices=[f.value for f in Form], default=Form.B.value)
    s.add_argument("--strategy", choices=[x.value for x in Strategy], default=Strategy.FUSED.value)
    s.add_argument("--backend", choices=[b.value for b in BackendKind], default=BackendKind.SERIAL.value)
    s.add_argument("--workers", type=int, default=None, help="parallel workers (default: cpu count)")
    s.add_argument("--plain", action="store_true", help="classic Laplacian: accept every move")
    s.add_argument("-o", "--out", default=None, help="output prefix")
    s.add_argument("--format", choices=["text", "json"], default="text")
    s.add_argument("--trace", default=None, help="write per-pass statistics as JSONL")
    s.add_argument("--quiet", action="store_true")
    s.set_defaults(func=cmd_smooth)

    q = sub.add_parser("quality", help="audit mesh quality")
    _add_mesh_options(q)
    q.add_argument("--format", choices=["text", "json"], default="text")
    q.set_defaults(func=cmd_quality)

    b = sub.add_parser("bench", help="run the benchmark matrix")
    _add_run_options(b)
    b.add_argument("--sizes", default="1k,5k,10k,50k,100k")
    b.add_argument("--repeats", type=int, default=DEFAULT_REPEATS)
    b.add_argument("--workers", type=int, default=None, help="parallel workers (default: cpu count)")
    b.add_argument("--precision", choices=sorted(FLOAT_DTYPES), default="double")
    b.add_argument("--seed", type=int, default=DEFAULT_SEED, help="fixture seed")
    b.add_argument("--fixtures", default=None, help="fixture cache directory (default: $SMARTLAP_FIXTURES or fixtures/)")
    b.add_argument("--out-dir", default=DEFAULT_BENCH_DIR)
    b.add_argument("--log", default=None, help="append each finished cell to this JSONL file")
    b.add_argument("--trend-seeds", type=int, default=0, help="run the Form A vs Form B comparison instead")
    b.add_argument("--trend-size", type=int, default=DEFAULT_TREND_SIZE)
    b.add_argument("--trend-out", default=None, help="CSV path for the comparison table")
    b.add_argument("--quiet", action="store_true")
    b.set_defaults(func=cmd_bench)

    return ap.parse_args(argv)


def main(argv: Optional[List[str]] = None) -> None:
    load_dotenv()
    args = parse_args(argv)
    if getattr(args, "workers", None) is not None and args.workers < 1:
        fail(f"--workers must be >= 1 (got {args.workers})")
    if getattr(args, "repeats", 1) < 1:
        fail(f"--repeats must be >= 1 (got {args.repeats})")
    try:
        code = args.func(args)
    except (TriangleFormatError, MeshStructureError, GenerationError, ValueError) as e:
        fail(str(e))
    sys.exit(code)


if __name__ == "__main__":
    main()
