"""
Acceptance membership in rotated coordinates: p ∈ B + Φ⁻¹(R³₊).

With a certified triple, (B + Φ⁻¹(R³₊)) ∩ {x₃ ≤ 1} = B, and above the top
every decomposition can be pushed onto the top slice:

    q ∈ B + Φ⁻¹(R³₊), q₃ > 1   iff   q_h ∈ S(1) + (q₃ − 1)·T,

where T is the triangle spanned by the horizontal parts of √3·g_i. Triples
without that certificate go through projected coordinate descent over the
full cone.
"""

import math
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
from loguru import logger
from numpy.typing import ArrayLike

from ..geometry.rotation import SQRT3, as_point3
from ..model.triple import AdmissibleTriple
from ..observability.metrics import metrics
from .config import DEFAULT_CONFIG, SolverConfig
from .golden import golden_section

EDGE_TOL = 1e-12
PENALTY = 1e3


def _in_triangle(point: np.ndarray, vertices: Sequence[np.ndarray]) -> bool:
    a, b, c = vertices
    signs = []
    for start, end in ((a, b), (b, c), (c, a)):
        edge = end - start
        rel = point - start
        signs.append(edge[0] * rel[1] - edge[1] * rel[0])
    return all(s >= 0.0 for s in signs) or all(s <= 0.0 for s in signs)


def top_slice_reachable(q: ArrayLike, triple: AdmissibleTriple, tol: float = 1e-9) -> bool:
    """
    Whether q (with q₃ ≥ 1) reaches the top slice S(1) through the cone,
    i.e. whether the triangle q_h − (q₃ − 1)·T meets S(1).
    """
    q = np.asarray(q, dtype=float)
    boat = triple.boat
    total = SQRT3 * max(q[2] - 1.0, 0.0)
    horizontal = triple.generators[:, :2]
    vertices = [q[:2] - total * g for g in horizontal]

    def gauge(point: np.ndarray) -> float:
        return boat.slice_gauge(point[0], point[1], 1.0)

    if any(gauge(v) <= 1.0 + tol for v in vertices):
        return True
    if total == 0.0:
        return False
    # S(1) inside the triangle
    if _in_triangle(np.zeros(2), vertices):
        return True
    for i in range(3):
        start, end = vertices[i], vertices[(i + 1) % 3]
        step = end - start
        edge = golden_section(lambda tau: gauge(start + tau * step), 0.0, 1.0, EDGE_TOL)
        if edge["minimum"] <= 1.0 + tol:
            return True
    return False


def projected_descent(
    objective: Callable[[np.ndarray], float],
    starts: Sequence[np.ndarray],
    step: float,
    iterations: int,
    target: float = -math.inf,
) -> Tuple[float, np.ndarray]:
    """
    Minimize `objective` over R³₊ by projected coordinate descent: try ±step
    along each axis (clipped at 0), halve the step when nothing improves.
    Each start is one run; stops early once the value reaches `target`.
    """
    best_value, best_lam = math.inf, np.asarray(starts[0], dtype=float)
    for start in starts:
        lam = np.asarray(start, dtype=float).copy()
        value = objective(lam)
        current = step
        for _ in range(iterations):
            if value <= target:
                break
            improved = False
            for i in range(len(lam)):
                for direction in (1.0, -1.0):
                    trial = lam.copy()
                    trial[i] = max(trial[i] + direction * current, 0.0)
                    if trial[i] == lam[i]:
                        continue
                    trial_value = objective(trial)
                    if trial_value < value:
                        lam, value, improved = trial, trial_value, True
            if not improved:
                current *= 0.5
        if value < best_value:
            best_value, best_lam = value, lam
        if best_value <= target:
            break
    return best_value, best_lam


def _restarts(scale: float, count: int) -> list:
    return [np.zeros(3)] + [SQRT3 * scale * np.eye(3)[i] for i in range(3)][:count]


def cone_sum_gap(
    p: ArrayLike,
    triple: AdmissibleTriple,
    cfg: SolverConfig = DEFAULT_CONFIG,
    target: Optional[float] = None,
) -> float:
    """
    min over λ ∈ R³₊ of max(f(q₁, q₂) − q₃, q₃ − 1), q = p − Σλ_i g_i, where f
    is the column height of B. p ∈ B + Φ⁻¹(R³₊) iff the minimum is ≤ 0.
    """
    p = as_point3(p)
    target = cfg.membership_tol if target is None else target
    generators = triple.generators
    boat = triple.boat

    def objective(lam: np.ndarray) -> float:
        q = p - lam @ generators
        return max(boat.height(q[0], q[1]) - q[2], q[2] - 1.0)

    scale = max(1.0, float(np.max(np.abs(p))))
    value, _ = projected_descent(objective, _restarts(scale, cfg.descent_restarts), scale,
                                 cfg.descent_iterations, target)
    return value


def cone_sum_height(c1: float, c2: float, triple: AdmissibleTriple, cfg: SolverConfig = DEFAULT_CONFIG) -> float:
    """
    Least q₃ with (c₁, c₂, q₃) ∈ B + Φ⁻¹(R³₊), without the band identity:

        min over λ ∈ R³₊ of f(c − Σλ_i g_i,h) + Σλ_i/√3   subject to f ≤ 1.

    The constraint enters as an exact penalty; inf when the minimizer
    still violates it.
    """
    generators = triple.generators
    boat = triple.boat
    c = np.array([c1, c2])

    def penalised(lam: np.ndarray) -> Tuple[float, float]:
        b = c - lam @ generators[:, :2]
        height = boat.height(b[0], b[1])
        return height + lam.sum() / SQRT3, max(height - 1.0, 0.0)

    def objective(lam: np.ndarray) -> float:
        value, excess = penalised(lam)
        return value + PENALTY * excess

    # convex in λ: one run from the origin
    scale = max(1.0, float(np.max(np.abs(c))))
    _, lam = projected_descent(objective, _restarts(scale, 0), scale, cfg.descent_iterations)
    value, excess = penalised(lam)
    return value if excess <= cfg.membership_tol else math.inf


def acceptance_membership(
    p: ArrayLike,
    triple: AdmissibleTriple,
    cfg: SolverConfig = DEFAULT_CONFIG,
    method: str = "auto",
) -> bool:
    """
    p ∈ B + Φ⁻¹(R³₊) for a point p in rotated coordinates.

    method "auto" uses the band identity and the top-slice test when the
    triple is certified; "descent" always runs the cone-sum descent.
    """
    p = as_point3(p)
    metrics.increment("membership_calls_total")
    if method not in ("auto", "descent"):
        raise ValueError(f"unknown membership method '{method}'")

    if method == "auto" and triple.band_exact:
        if p[2] <= 1.0:
            return bool(triple.boat.contains(p, slack=cfg.membership_tol))
        return top_slice_reachable(p, triple, cfg.membership_tol)

    gap = cone_sum_gap(p, triple, cfg)
    logger.trace(f"[MEMBERSHIP] descent gap {gap:.3e} at {p.tolist()}")
    return gap <= cfg.membership_tol


def acceptance_membership_batch(
    points: ArrayLike,
    triple: AdmissibleTriple,
    cfg: SolverConfig = DEFAULT_CONFIG,
) -> np.ndarray:
    """Row-wise `acceptance_membership`, vectorized below the top slice."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    metrics.increment("membership_calls_total", len(points))
    if not triple.band_exact:
        return np.array([cone_sum_gap(q, triple, cfg) <= cfg.membership_tol for q in points], dtype=bool)
    inside = np.zeros(len(points), dtype=bool)
    low = points[:, 2] <= 1.0
    inside[low] = triple.boat.contains(points[low], slack=cfg.membership_tol)
    for index in np.flatnonzero(~low):
        inside[index] = top_slice_reachable(points[index], triple, cfg.membership_tol)
    return inside
