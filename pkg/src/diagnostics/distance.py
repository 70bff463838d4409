"""
Point-to-segment distances and the one-sided Hausdorff excess.
"""

from typing import Union

import numpy as np
from numpy.typing import ArrayLike

from ..solver.rho import OptimalSet

SegmentLike = Union[OptimalSet, ArrayLike]


def _segment(target: SegmentLike) -> np.ndarray:
    if isinstance(target, OptimalSet):
        return np.asarray(target.endpoints, dtype=float)
    seg = np.asarray(target, dtype=float)
    if seg.shape == (3,):
        return np.vstack([seg, seg])
    if seg.shape != (2, 3):
        raise ValueError(f"a segment is two points of R³, got shape {seg.shape}")
    return seg


def point_segment_distance(points: ArrayLike, start: ArrayLike, end: ArrayLike) -> np.ndarray:
    """Euclidean distance of each point to the closed segment [start, end]."""
    points = np.asarray(points, dtype=float)
    start = np.asarray(start, dtype=float)
    direction = np.asarray(end, dtype=float) - start
    length_sq = float(direction @ direction)
    if length_sq == 0.0:
        return np.linalg.norm(points - start, axis=-1)
    t = np.clip(((points - start) @ direction) / length_sq, 0.0, 1.0)
    nearest = start + t[..., None] * direction
    return np.linalg.norm(points - nearest, axis=-1)


def excess(a_pts: ArrayLike, b_set: SegmentLike) -> float:
    """sup over a ∈ a_pts of dist(a, b_set)."""
    a_pts = np.atleast_2d(np.asarray(a_pts, dtype=float))
    if a_pts.size == 0:
        raise ValueError("excess needs at least one point")
    seg = _segment(b_set)
    return float(np.max(point_segment_distance(a_pts, seg[0], seg[1])))


def segment_excess(a_set: SegmentLike, b_set: SegmentLike) -> float:
    """Excess of one segment over another; attained at an endpoint of the first."""
    return excess(_segment(a_set), b_set)
