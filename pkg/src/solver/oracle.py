"""
Brute-force oracle for ρ and R(x): a grid over w₁, and for every column the
least feasible w₃ found by bisection on acceptance membership. No band
shortcut and no convexity of h are used; every grid column is evaluated.
"""

import math
from typing import Callable, Tuple

import numpy as np
from loguru import logger
from numpy.typing import ArrayLike

from ..geometry.rotation import SQRT3, as_point3
from ..model.triple import AdmissibleTriple
from .config import DEFAULT_CONFIG, SolverConfig
from .membership import acceptance_membership_batch

BAND_TOL = 1e-14
ARGMIN_SLACK = 1e-9

Accepted = Callable[[np.ndarray, np.ndarray], np.ndarray]


def _bracket(x: np.ndarray, cfg: SolverConfig) -> Tuple[float, float]:
    half = float(np.max(np.abs(x))) * SQRT3 + cfg.bracket_pad
    return -half, half


def _column_test(p2: float, triple: AdmissibleTriple, cfg: SolverConfig) -> Accepted:
    def accepted(c1: np.ndarray, q3: np.ndarray) -> np.ndarray:
        return acceptance_membership_batch(np.column_stack([c1, np.full_like(c1, p2), q3]), triple, cfg)
    return accepted


def _bisect(c1: np.ndarray, lo: np.ndarray, hi: np.ndarray, accepted: Accepted, rel_tol: float) -> np.ndarray:
    """
    Shrink [lo, hi] per column, hi accepted and lo not, until
    hi − lo ≤ rel_tol·max(1, hi). Returns hi.
    """
    lo, hi = lo.copy(), hi.copy()
    while True:
        active = np.flatnonzero(hi - lo > rel_tol * np.maximum(1.0, hi))
        if active.size == 0:
            return hi
        mid = 0.5 * (lo[active] + hi[active])
        inside = accepted(c1[active], mid)
        hi[active[inside]] = mid[inside]
        lo[active[~inside]] = mid[~inside]


def _upper_heights(c1: np.ndarray, cap: float, accepted: Accepted) -> np.ndarray:
    """An accepted q₃ ∈ (1, cap] per column by doubling above the top slice; inf if none."""
    hi = np.full_like(c1, 2.0)
    done = accepted(c1, hi)
    while True:
        pending = np.flatnonzero(~done & (hi < cap))
        if pending.size == 0:
            return np.where(done, hi, np.inf)
        hi[pending] = np.minimum(1.0 + 2.0 * (hi[pending] - 1.0), cap)
        done[pending] = accepted(c1[pending], hi[pending])


def brute_force_oracle(
    x: ArrayLike,
    triple: AdmissibleTriple,
    grid_step: float,
    cfg: SolverConfig = DEFAULT_CONFIG,
) -> Tuple[float, Tuple[float, float]]:
    """
    (ρ, [w₁ lo, w₁ hi]) by exhaustive search over w₁ at spacing `grid_step`.
    """
    if not grid_step > 0:
        raise ValueError(f"grid_step must be positive, got {grid_step}")
    x = as_point3(x)
    p = triple.to_rotated(x)
    p1, p2, p3 = (float(v) for v in p)
    lo, hi = _bracket(x, cfg)
    count = int(math.ceil((hi - lo) / grid_step)) + 1
    c1 = np.linspace(lo, hi, count)
    accepted = _column_test(p2, triple, cfg)

    top = accepted(c1, np.ones(count))
    if top.any():
        # columns infeasible at q₃ = 1 need q₃ > 1 and cannot attain the minimum
        cols = c1[top]
        at_zero = accepted(cols, np.zeros_like(cols))
        q3 = _bisect(cols, np.zeros_like(cols), np.ones_like(cols), accepted, BAND_TOL)
        h = np.where(at_zero, 0.0, q3) - p3
        slack = ARGMIN_SLACK
        regime = "band"
    else:
        cols = c1
        upper = _upper_heights(cols, p3 + cfg.w3_cap, accepted)
        finite = np.isfinite(upper)
        if not finite.any():
            return math.inf, (math.nan, math.nan)
        cols = cols[finite]
        q3 = _bisect(cols, np.ones_like(cols), upper[finite], accepted, cfg.bisection_tol)
        h = q3 - p3
        slack = max(ARGMIN_SLACK, 10.0 * cfg.bisection_tol * max(1.0, float(q3.max())))
        regime = "general"

    h_min = float(np.min(h))
    attained = cols[h <= h_min + slack]
    logger.debug(f"[ORACLE] {regime} regime, {len(cols)}/{count} columns, h*={h_min:.9g}")
    return h_min / SQRT3, (float(attained.min() - p1), float(attained.max() - p1))
