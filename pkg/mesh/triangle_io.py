"""
Triangle .node / .ele text format.

.node:  <#points> <dim=2> <#attrs> <#bmarkers 0|1>
        <index> <x> <y> [attrs...] [bmarker]
.ele:   <#triangles> <nodes-per-tri=3> <#attrs>
        <index> <v1> <v2> <v3> [attrs...]

Input numbering may start at 0 or 1 (detected from the first index).
Attributes and boundary markers are read and dropped. Output is always
0-based. '#' starts a comment that runs to the end of the line.
"""
from __future__ import annotations

import os
from typing import List, Tuple, Union

import numpy as np

from mesh.errors import TriangleFormatError
from mesh.storage import Layout, MeshStorage, build_mesh


def _data_lines(text: str) -> List[Tuple[int, List[str]]]:
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        rows.append((lineno, line.split()))
    return rows


def _ints(tokens: List[str], lineno: int, source: str) -> List[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise TriangleFormatError(f"expected integers, got {' '.join(tokens)!r}", lineno, source)


def _parse_node(text: str) -> Tuple[np.ndarray, int]:
    src = ".node"
    rows = _data_lines(text)
    if not rows:
        raise TriangleFormatError("missing header", None, src)
    lineno, head = rows[0]
    if len(head) != 4:
        raise TriangleFormatError("header must be '<#points> <dim> <#attrs> <#bmarkers>'", lineno, src)
    n, dim, n_attr, n_bm = _ints(head, lineno, src)
    if dim != 2:
        raise TriangleFormatError(f"only 2D points are supported (dim={dim})", lineno, src)
    if n < 0 or n_attr < 0 or n_bm not in (0, 1):
        raise TriangleFormatError("bad counts in header", lineno, src)

    body = rows[1:]
    if len(body) != n:
        last = body[-1][0] if body else lineno
        raise TriangleFormatError(f"header declares {n} points, found {len(body)}", last, src)

    width = 3 + n_attr + n_bm
    pts = np.empty((n, 2), dtype=np.float64)
    base = 0
    for i, (ln, tok) in enumerate(body):
        if len(tok) != width:
            raise TriangleFormatError(f"expected {width} fields, got {len(tok)}", ln, src)
        idx = _ints(tok[:1], ln, src)[0]
        if i == 0:
            if idx not in (0, 1):
                raise TriangleFormatError(f"first index must be 0 or 1, got {idx}", ln, src)
            base = idx
        elif idx != base + i:
            raise TriangleFormatError(f"expected index {base + i}, got {idx}", ln, src)
        try:
            pts[i, 0] = float(tok[1])
            pts[i, 1] = float(tok[2])
            for t in tok[3:]:
                float(t)
        except ValueError:
            raise TriangleFormatError(f"non-numeric value in {' '.join(tok)!r}", ln, src)
    return pts, base


def _parse_ele(text: str, node_base: int) -> np.ndarray:
    src = ".ele"
    rows = _data_lines(text)
    if not rows:
        raise TriangleFormatError("missing header", None, src)
    lineno, head = rows[0]
    if len(head) != 3:
        raise TriangleFormatError("header must be '<#triangles> <nodes-per-tri> <#attrs>'", lineno, src)
    n, per_tri, n_attr = _ints(head, lineno, src)
    if per_tri != 3:
        raise TriangleFormatError(f"only 3-node triangles are supported (got {per_tri})", lineno, src)
    if n < 0 or n_attr < 0:
        raise TriangleFormatError("bad counts in header", lineno, src)

    body = rows[1:]
    if len(body) != n:
        last = body[-1][0] if body else lineno
        raise TriangleFormatError(f"header declares {n} triangles, found {len(body)}", last, src)

    width = 4 + n_attr
    tri = np.empty((n, 3), dtype=np.int64)
    base = 0
    for i, (ln, tok) in enumerate(body):
        if len(tok) != width:
            raise TriangleFormatError(f"expected {width} fields, got {len(tok)}", ln, src)
        vals = _ints(tok[:4], ln, src)
        if i == 0:
            if vals[0] not in (0, 1):
                raise TriangleFormatError(f"first index must be 0 or 1, got {vals[0]}", ln, src)
            base = vals[0]
        elif vals[0] != base + i:
            raise TriangleFormatError(f"expected index {base + i}, got {vals[0]}", ln, src)
        # vertex references follow the .node numbering
        tri[i] = [v - node_base for v in vals[1:]]
    return tri


def read_triangle_format(
    node_text: str,
    ele_text: str,
    layout: Union[Layout, str] = Layout.AOS,
    float_dtype=np.float64,
) -> MeshStorage:
    pts, node_base = _parse_node(node_text)
    tri = _parse_ele(ele_text, node_base)
    return build_mesh(pts, tri, layout, float_dtype=float_dtype)


def write_triangle_format(mesh: MeshStorage) -> Tuple[str, str]:
    """0-based .node/.ele texts; coordinates keep 17 significant digits."""
    x = mesh.x.astype(np.float64)
    y = mesh.y.astype(np.float64)
    node = [f"{mesh.n_vert} 2 0 0"]
    node.extend(f"{i} {x[i]:.17g} {y[i]:.17g}" for i in range(mesh.n_vert))
    tri = mesh.tri
    ele = [f"{mesh.n_trgl} 3 0"]
    ele.extend(f"{t} {tri[t, 0]} {tri[t, 1]} {tri[t, 2]}" for t in range(mesh.n_trgl))
    return "\n".join(node) + "\n", "\n".join(ele) + "\n"


# --- file helpers ------------------------------------------------------------

def triangle_paths(prefix: str) -> Tuple[str, str]:
    return f"{prefix}.node", f"{prefix}.ele"


def read_triangle_files(
    node_path: str,
    ele_path: str,
    layout: Union[Layout, str] = Layout.AOS,
    float_dtype=np.float64,
) -> MeshStorage:
    with open(node_path, "r", encoding="utf-8") as f:
        node_text = f.read()
    with open(ele_path, "r", encoding="utf-8") as f:
        ele_text = f.read()
    try:
        return read_triangle_format(node_text, ele_text, layout, float_dtype=float_dtype)
    except TriangleFormatError as e:
        path = node_path if e.source == ".node" else ele_path
        raise TriangleFormatError(e.message, e.line, path) from None


def write_triangle_files(mesh: MeshStorage, prefix: str) -> Tuple[str, str]:
    node_path, ele_path = triangle_paths(prefix)
    parent = os.path.dirname(node_path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    node_text, ele_text = write_triangle_format(mesh)
    with open(node_path, "w", encoding="utf-8", newline="\n") as f:
        f.write(node_text)
    with open(ele_path, "w", encoding="utf-8", newline="\n") as f:
        f.write(ele_text)
    return node_path, ele_path
