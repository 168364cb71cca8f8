"""Deterministic text writers: OBJ meshes and polylines, CSV tables."""

from __future__ import annotations

import io
import math

import numpy as np


def fmt(x) -> str:
    """Shortest round-trip decimal form, independent of locale."""
    x = float(x)
    if x == 0.0:
        return "0.0"
    if math.isnan(x):
        return "nan"
    return repr(x)


def mesh_obj(vertices: np.ndarray, nu: int, nv: int, comment: str = "") -> str:
    """OBJ text for a (nu+1) x (nv+1) vertex grid, row-major in (u, v).

    Each grid cell is split into two triangles along the same diagonal.
    """
    out = io.StringIO()
    if comment:
        out.write(f"# {comment}\n")
    for p in vertices.reshape(-1, 3):
        out.write(f"v {fmt(p[0])} {fmt(p[1])} {fmt(p[2])}\n")
    stride = nv + 1
    for i in range(nu):
        for j in range(nv):
            k = i * stride + j + 1
            out.write(f"f {k} {k + stride} {k + stride + 1}\n")
            out.write(f"f {k} {k + stride + 1} {k + 1}\n")
    return out.getvalue()


def polylines_obj(curves, comment: str = "") -> str:
    """OBJ text for tagged polylines; ``curves`` is a list of (tag, points)."""
    out = io.StringIO()
    if comment:
        out.write(f"# {comment}\n")
    offset = 1
    for tag, pts in curves:
        pts = np.asarray(pts).reshape(-1, 3)
        out.write(f"g {tag}\n")
        for p in pts:
            out.write(f"v {fmt(p[0])} {fmt(p[1])} {fmt(p[2])}\n")
        out.write("l " + " ".join(str(offset + i) for i in range(len(pts))) + "\n")
        offset += len(pts)
    return out.getvalue()


def csv_text(header, rows) -> str:
    out = io.StringIO()
    out.write(",".join(header) + "\n")
    for row in rows:
        out.write(",".join(cell if isinstance(cell, str) else fmt(cell) for cell in row) + "\n")
    return out.getvalue()
