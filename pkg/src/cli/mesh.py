"""
Boundary meshes of boat bodies and profile outlines as CSV data.

The lateral surface is a grid of rings: one ring of outline points per
height, heights spaced as (j/resolution)² so that the bottom, where the body
pinches to a segment, gets more rows.
"""

from pathlib import Path
from typing import Tuple, Union

import numpy as np
from loguru import logger

from ..diagnostics.export import write_csv
from ..geometry.boat import BoatSet
from ..geometry.profiles import BoatProfile

MIN_RESOLUTION = 8
DUPLICATE_TOL = 1e-12


def profile_outline(profile: BoatProfile, resolution: int) -> np.ndarray:
    """
    Outline of the profile ordered by angle, columns u, v, patch index.
    Seam points shared by two arcs appear once.
    """
    pts = profile.outline(resolution)
    keep = [0]
    for i in range(1, len(pts)):
        if np.max(np.abs(pts[i, :2] - pts[keep[-1], :2])) > DUPLICATE_TOL:
            keep.append(i)
    if len(keep) > 1 and np.max(np.abs(pts[keep[-1], :2] - pts[keep[0], :2])) <= DUPLICATE_TOL:
        keep.pop()
    return pts[keep]


def boundary_mesh(boat: BoatSet, resolution: int) -> Tuple[np.ndarray, np.ndarray]:
    """Vertices (n, 3) and triangles (m, 3) of the lateral boundary surface."""
    if resolution < MIN_RESOLUTION:
        raise ValueError(f"resolution must be at least {MIN_RESOLUTION}, got {resolution}")
    ring = profile_outline(boat.profile, resolution)[:, :2]
    heights = (np.arange(resolution + 1) / resolution) ** 2

    vertices = np.vstack([
        np.column_stack([
            ring[:, 0] * np.sqrt(1.0 + boat.r ** 2 * t),
            ring[:, 1] * boat.r * np.sqrt(t),
            np.full(len(ring), t),
        ])
        for t in heights
    ])

    count = len(ring)
    triangles = []
    for j in range(resolution):
        below, above = j * count, (j + 1) * count
        for i in range(count):
            nxt = (i + 1) % count
            triangles.append((below + i, below + nxt, above + i))
            triangles.append((below + nxt, above + nxt, above + i))
    return vertices, np.asarray(triangles, dtype=int)


def mesh_paths(out: Union[str, Path]) -> Tuple[Path, Path, Path]:
    """Vertex, triangle and outline file names derived from `out`."""
    out = Path(out)
    stem = out.with_suffix("")
    return out, Path(f"{stem}.triangles.csv"), Path(f"{stem}.outline.csv")


def write_mesh(boat: BoatSet, resolution: int, out: Union[str, Path]) -> Tuple[Path, Path, Path]:
    vertices, triangles = boundary_mesh(boat, resolution)
    outline = profile_outline(boat.profile, resolution)
    vertex_path, triangle_path, outline_path = mesh_paths(out)

    write_csv([{"x1": float(a), "x2": float(b), "x3": float(c)} for a, b, c in vertices],
              vertex_path, ["x1", "x2", "x3"])
    write_csv([{"i": int(a), "j": int(b), "k": int(c)} for a, b, c in triangles],
              triangle_path, ["i", "j", "k"])
    names = [p.name for p in boat.profile.patches]
    write_csv([{"u": float(u), "v": float(v), "patch": names[int(k)]} for u, v, k in outline],
              outline_path, ["u", "v", "patch"])

    logger.info(f"[MESH] {len(vertices)} vertices, {len(triangles)} triangles, "
                f"{len(outline)} outline points (r={boat.r:g}, {boat.profile.name})")
    return vertex_path, triangle_path, outline_path
