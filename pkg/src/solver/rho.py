"""
The optimal value function ρ and the optimal set mapping R.

In rotated coordinates p = Φ⁻¹(x), a payoff z = Φ(w₁, 0, w₃) is feasible iff
p + (w₁, 0, w₃) ∈ B + Φ⁻¹(R³₊), and π(z) = w₃/√3. So

    ρ(x) = min over w₁ of h(w₁)/√3,   h(w₁) = least feasible w₃,

a convex one-dimensional problem. On the band path the minimizing column
meets B below the top slice and h(w₁) = f(p₁ + w₁, p₂) − p₃; otherwise h is
evaluated by bisection on w₃ against acceptance membership.
"""

import math
from dataclasses import dataclass
from typing import Any, Callable, Dict, Optional, Tuple

import numpy as np
from loguru import logger
from numpy.typing import ArrayLike

from ..errors import SolverInfeasibleError
from ..geometry.rotation import SQRT3, as_point3
from ..model.triple import AdmissibleTriple
from ..observability.metrics import metrics
from .config import DEFAULT_CONFIG, SolverConfig
from .golden import minimize_bracketed
from .membership import acceptance_membership, cone_sum_height

PATH_BAND = "band"
PATH_GENERAL = "general"
MAX_DOUBLINGS = 80


@dataclass(frozen=True)
class OptimalSet:
    """
    R(x) as a segment {Φ(w₁, 0, w₃*) : w₁ ∈ w1_interval}.

    `endpoints` are the payoffs z at the interval ends, `contacts` the points
    z + x where the shifted position touches the acceptance set.
    """

    x: np.ndarray
    rho: float
    w1_interval: Tuple[float, float]
    w1_star: float
    w3_star: float
    endpoints: np.ndarray
    point: np.ndarray
    path: str
    singleton_width: float = 1e-4

    @property
    def contacts(self) -> np.ndarray:
        return self.endpoints + self.x

    @property
    def width(self) -> float:
        return self.w1_interval[1] - self.w1_interval[0]

    @property
    def is_singleton(self) -> bool:
        return self.width <= self.singleton_width

    @property
    def center(self) -> np.ndarray:
        return 0.5 * (self.endpoints[0] + self.endpoints[1])

    def interior(self, count: int) -> np.ndarray:
        """`count` evenly spaced payoffs strictly inside the segment."""
        tau = (np.arange(count) + 1.0) / (count + 1.0)
        return self.endpoints[0] + tau[:, None] * (self.endpoints[1] - self.endpoints[0])

    def to_dict(self) -> Dict[str, Any]:
        return {
            "x": [float(v) for v in self.x],
            "rho": float(self.rho),
            "path": self.path,
            "w1_interval": [float(v) for v in self.w1_interval],
            "w1_star": float(self.w1_star),
            "w3_star": float(self.w3_star),
            "width": float(self.width),
            "singleton": bool(self.is_singleton),
            "endpoints": [[float(v) for v in row] for row in self.endpoints],
            "contacts": [[float(v) for v in row] for row in self.contacts],
        }


@dataclass(frozen=True)
class _Minimum:
    p: np.ndarray
    path: str
    c1_star: float
    h_star: float
    column: Callable[[float], float]
    bracket: Tuple[float, float]
    flat_tol: float
    edge_tol: float


def _bracket(x: np.ndarray, p: np.ndarray, cfg: SolverConfig) -> Tuple[float, float]:
    """Search interval for c₁ = p₁ + w₁."""
    if cfg.bracket is not None:
        return p[0] + cfg.bracket[0], p[0] + cfg.bracket[1]
    half = float(np.max(np.abs(x))) * SQRT3 + cfg.bracket_pad
    return -half, half


def general_height(c1: float, c2: float, triple: AdmissibleTriple, cfg: SolverConfig, cap: float) -> float:
    """
    Least q₃ ≤ cap with (c₁, c₂, q₃) ∈ B + Φ⁻¹(R³₊); inf if none.
    """
    if not triple.band_exact:
        height = cone_sum_height(c1, c2, triple, cfg)
        return height if height <= cap else math.inf

    height = triple.boat.height(c1, c2)
    if height <= 1.0:
        return height

    # above the top slice: membership is monotone in q₃
    lo, span = 1.0, 1.0
    hi = lo + span
    while not acceptance_membership(np.array([c1, c2, hi]), triple, cfg):
        if hi > cap:
            return math.inf
        lo, span = hi, 2.0 * span
        hi = 1.0 + span
    while hi - lo > cfg.bisection_tol * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        if acceptance_membership(np.array([c1, c2, mid]), triple, cfg):
            hi = mid
        else:
            lo = mid
    return hi


def _minimize(x: ArrayLike, triple: AdmissibleTriple, cfg: SolverConfig) -> _Minimum:
    x = as_point3(x)
    p = triple.to_rotated(x)
    p2, p3 = float(p[1]), float(p[2])
    lo, hi = _bracket(x, p, cfg)

    if triple.band_exact:
        def band_column(c1: float) -> float:
            return triple.boat.height(c1, p2) - p3

        band = minimize_bracketed(band_column, lo, hi, cfg.search_tol, cfg.max_expansions,
                                  cfg.max_golden_iterations)
        if band["minimum"] + p3 <= 1.0 + cfg.band_tol:
            return _Minimum(p, PATH_BAND, band["argmin"], band["minimum"], band_column,
                            band["bracket"], cfg.flat_tol, cfg.search_tol)

    cap = p3 + cfg.w3_cap

    def general_column(c1: float) -> float:
        return general_height(c1, p2, triple, cfg, cap) - p3

    logger.debug(f"[SOLVER] general path at p={p.tolist()}")
    general = minimize_bracketed(general_column, lo, hi, cfg.general_search_tol, cfg.max_expansions,
                                 cfg.max_golden_iterations)
    if not math.isfinite(general["minimum"]):
        raise SolverInfeasibleError(
            f"no w3 <= {cfg.w3_cap:g} is feasible for any w1 in [{lo - p[0]:.6g}, {hi - p[0]:.6g}]"
        )
    return _Minimum(p, PATH_GENERAL, general["argmin"], general["minimum"], general_column,
                    general["bracket"], cfg.general_flat_tol, cfg.general_search_tol)


def _face_edge(
    column: Callable[[float], float],
    start: float,
    direction: float,
    level: float,
    limit: float,
    tol: float,
) -> float:
    """Farthest offset t ∈ [0, limit] with column(start + direction·t) ≤ level."""
    inside, step = 0.0, tol
    for _ in range(MAX_DOUBLINGS):
        if step >= limit:
            step = limit
            if column(start + direction * step) <= level:
                return limit
            break
        if column(start + direction * step) > level:
            break
        inside, step = step, 2.0 * step
    outside = step
    while outside - inside > tol:
        mid = 0.5 * (inside + outside)
        if column(start + direction * mid) <= level:
            inside = mid
        else:
            outside = mid
    return inside


def rho_with_path(
    x: ArrayLike,
    triple: AdmissibleTriple,
    cfg: SolverConfig = DEFAULT_CONFIG,
) -> Tuple[float, str]:
    """ρ(x) and the path ("band" or "general") that produced it."""
    minimum = _minimize(x, triple, cfg)
    metrics.increment("solver_path_total", labels={"path": minimum.path})
    return minimum.h_star / SQRT3, minimum.path


def rho(x: ArrayLike, triple: AdmissibleTriple, cfg: SolverConfig = DEFAULT_CONFIG) -> float:
    """ρ(x) = inf{π(z) : z ∈ M, z + x ∈ A}."""
    return rho_with_path(x, triple, cfg)[0]


def optimal_set(
    x: ArrayLike,
    triple: AdmissibleTriple,
    cfg: SolverConfig = DEFAULT_CONFIG,
) -> OptimalSet:
    """
    R(x) = {z ∈ M : z + x ∈ A, π(z) = ρ(x)}.

    The face {w₁ : h(w₁) ≤ h* + flat_tol} is found by outward doubling and
    bisection from the minimizer.
    """
    with metrics.time_operation("optimal_set", {"model": triple.name}):
        minimum = _minimize(x, triple, cfg)
        metrics.increment("solver_path_total", labels={"path": minimum.path})

        level = minimum.h_star + minimum.flat_tol
        lo, hi = minimum.bracket
        right = _face_edge(minimum.column, minimum.c1_star, 1.0, level,
                           hi - minimum.c1_star, minimum.edge_tol)
        left = _face_edge(minimum.column, minimum.c1_star, -1.0, level,
                          minimum.c1_star - lo, minimum.edge_tol)

        p = minimum.p
        w1_lo = minimum.c1_star - left - p[0]
        w1_hi = minimum.c1_star + right - p[0]
        w3_star = minimum.h_star
        endpoints = triple.payoffs.from_rotated(np.array([w1_lo, w1_hi]), w3_star)

    result = OptimalSet(
        x=as_point3(x),
        rho=w3_star / SQRT3,
        w1_interval=(float(w1_lo), float(w1_hi)),
        w1_star=float(minimum.c1_star - p[0]),
        w3_star=float(w3_star),
        endpoints=endpoints,
        point=triple.payoffs.from_rotated(minimum.c1_star - p[0], w3_star),
        path=minimum.path,
        singleton_width=cfg.singleton_width,
    )
    logger.debug(
        f"[SOLVER] R(x) on {result.path} path: rho={result.rho:.12g}, "
        f"w1 in [{w1_lo:.9g}, {w1_hi:.9g}]"
    )
    return result


def feasibility_violation(
    z: ArrayLike,
    x: ArrayLike,
    rho_value: float,
    triple: AdmissibleTriple,
    slack: float = 1e-6,
    cfg: Optional[SolverConfig] = None,
) -> float:
    """
    Price gap |π(z) − ρ| of a candidate z ∈ R(x), or inf when z + x is not
    acceptable even after adding `slack` units of the riskless payoff.
    """
    cfg = cfg or DEFAULT_CONFIG
    z = as_point3(z)
    gap = abs(triple.price.price(z, tol=1e-6) - rho_value)
    lifted = triple.to_rotated(z + as_point3(x)) + np.array([0.0, 0.0, SQRT3 * slack])
    if not acceptance_membership(lifted, triple, cfg):
        return math.inf
    return gap


def lipschitz_estimate(
    triple: AdmissibleTriple,
    samples: int,
    rng: np.random.Generator,
    box: float = 0.5,
    radius: float = 0.05,
    cfg: SolverConfig = DEFAULT_CONFIG,
) -> float:
    """
    Largest |ρ(x) − ρ(y)| / ‖x − y‖∞ over random nearby pairs in [−box, box]³.

    Canonical triples stay at or below 1; for custom triples this is the
    reported continuity evidence.
    """
    x = rng.uniform(-box, box, (samples, 3))
    y = x + rng.uniform(-radius, radius, (samples, 3))
    worst = 0.0
    for a, b in zip(x, y):
        step = float(np.max(np.abs(a - b)))
        if step > 0.0:
            worst = max(worst, abs(rho(a, triple, cfg) - rho(b, triple, cfg)) / step)
    logger.info(f"[SOLVER] empirical Lipschitz constant {worst:.6f} over {samples} pairs ({triple.name})")
    return worst
