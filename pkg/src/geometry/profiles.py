"""
Planar profiles E ⊂ R²: single ellipses and unions of quarter ellipses.
"""

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from numpy.typing import ArrayLike

Interval = Tuple[float, float]

RANGE_SLACK = 1e-12


@dataclass(frozen=True)
class EllipsePatch:
    """
    The piece {α(u−a)² + βv² ≤ 1, u ∈ u_range, v ∈ v_range} of an ellipse.
    """

    a: float
    alpha: float
    beta: float
    u_range: Interval = (-np.inf, np.inf)
    v_range: Interval = (-np.inf, np.inf)
    name: str = ""

    def __post_init__(self):
        if not (self.alpha > 0 and self.beta > 0):
            raise ValueError(f"alpha and beta must be positive, got {self.alpha}, {self.beta}")
        for label, (lo, hi) in (("u_range", self.u_range), ("v_range", self.v_range)):
            if lo > hi:
                raise ValueError(f"{label} is empty: [{lo}, {hi}]")

    def level(self, u: ArrayLike, v: ArrayLike) -> np.ndarray:
        """α(u−a)² + βv²; the patch is the part of {level ≤ 1} inside the ranges."""
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        return self.alpha * (u - self.a) ** 2 + self.beta * v ** 2

    def in_ranges(self, u: ArrayLike, v: ArrayLike, slack: float = 0.0) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        return (
            (u >= self.u_range[0] - slack) & (u <= self.u_range[1] + slack)
            & (v >= self.v_range[0] - slack) & (v <= self.v_range[1] + slack)
        )

    def contains(self, u: ArrayLike, v: ArrayLike, slack: float = 0.0) -> np.ndarray:
        return (self.level(u, v) <= 1.0 + slack) & self.in_ranges(u, v, slack)

    def holds(self, u: float, v: float, slack: float = 0.0) -> bool:
        """Scalar twin of `contains` for the hot bisection loops."""
        if not self.within(u, v, slack):
            return False
        du = u - self.a
        return self.alpha * du * du + self.beta * v * v <= 1.0 + slack

    def within(self, u: float, v: float, slack: float = 0.0) -> bool:
        """Scalar range test."""
        return (
            self.u_range[0] - slack <= u <= self.u_range[1] + slack
            and self.v_range[0] - slack <= v <= self.v_range[1] + slack
        )

    def ray_exit(self, u: float, v: float) -> float:
        """
        The s > 0 with (u, v)/s on the full ellipse, or inf when the ray from
        the origin through (u, v) never crosses it. Needs α a² ≤ 1.
        """
        quad = self.alpha * u * u + self.beta * v * v
        if quad == 0.0:
            return 0.0
        lin = self.alpha * self.a * u
        const = self.alpha * self.a * self.a - 1.0
        denom = lin + math.sqrt(max(lin * lin - quad * const, 0.0))
        if denom <= 0.0:
            return math.inf
        return quad / denom

    @property
    def interior_contains_origin(self) -> bool:
        """|a| < 1/√α, the condition under which F has a nonvanishing ∂₃F."""
        return abs(self.a) < 1.0 / np.sqrt(self.alpha)

    def full_ellipse(self) -> "EllipsePatch":
        return EllipsePatch(a=self.a, alpha=self.alpha, beta=self.beta, name=f"{self.name}*")

    def arc(self, n: int) -> np.ndarray:
        """Points of the elliptic arc lying inside the ranges, shape (m, 2)."""
        theta = np.linspace(0.0, 2.0 * np.pi, n, endpoint=False)
        u = self.a + np.cos(theta) / np.sqrt(self.alpha)
        v = np.sin(theta) / np.sqrt(self.beta)
        keep = self.in_ranges(u, v, RANGE_SLACK)
        return np.column_stack([u[keep], v[keep]])

    def bounding_box(self) -> Tuple[Interval, Interval]:
        half_u = 1.0 / np.sqrt(self.alpha)
        half_v = 1.0 / np.sqrt(self.beta)
        u_lo = max(self.a - half_u, self.u_range[0])
        u_hi = min(self.a + half_u, self.u_range[1])
        v_lo = max(-half_v, self.v_range[0])
        v_hi = min(half_v, self.v_range[1])
        return (u_lo, u_hi), (v_lo, v_hi)


@dataclass(frozen=True)
class BoatProfile:
    """A union of ellipse patches; a point is a member iff some patch holds it."""

    patches: Tuple[EllipsePatch, ...]
    name: str = "custom"

    def __post_init__(self):
        if not self.patches:
            raise ValueError("a profile needs at least one patch")

    def contains(self, u: ArrayLike, v: ArrayLike, slack: float = 0.0) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        inside = np.zeros(np.broadcast(u, v).shape, dtype=bool)
        for patch in self.patches:
            inside |= patch.contains(u, v, slack)
        return inside

    def holds(self, u: float, v: float, slack: float = 0.0) -> bool:
        return any(patch.holds(u, v, slack) for patch in self.patches)

    def gauge(self, u: float, v: float) -> float:
        """
        Minkowski gauge inf{s > 0 : (u, v)/s ∈ E}. E must be convex with the
        origin inside; then (u, v) ∈ E iff gauge ≤ 1.
        """
        best = math.inf
        for patch in self.patches:
            s = patch.ray_exit(u, v)
            if s == 0.0:
                return 0.0
            if s < best and patch.within(u / s, v / s, RANGE_SLACK):
                best = s
        return best

    def active_patch(self, u: float, v: float, slack: float = 1e-9) -> int:
        """
        Index of the patch whose arc carries (u, v): among the patches that
        contain the point, the one with level closest to 1.
        """
        return int(self.active_patches(np.array([u]), np.array([v]), slack)[0])

    def active_patches(self, u: ArrayLike, v: ArrayLike, slack: float = 1e-9) -> np.ndarray:
        """Vectorized `active_patch`; -1 where no patch contains the point."""
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        gaps = np.stack([
            np.where(patch.contains(u, v, slack), np.abs(patch.level(u, v) - 1.0), np.inf)
            for patch in self.patches
        ])
        best = np.argmin(gaps, axis=0)
        return np.where(np.isfinite(np.min(gaps, axis=0)), best, -1)

    def bounding_box(self) -> Tuple[Interval, Interval]:
        boxes = [patch.bounding_box() for patch in self.patches]
        return (
            (min(b[0][0] for b in boxes), max(b[0][1] for b in boxes)),
            (min(b[1][0] for b in boxes), max(b[1][1] for b in boxes)),
        )

    def outline(self, n: int) -> np.ndarray:
        """
        Boundary samples ordered by polar angle, shape (m, 3): columns u, v
        and patch index.
        """
        rows = []
        for index, patch in enumerate(self.patches):
            pts = patch.arc(n)
            rows.append(np.column_stack([pts, np.full(len(pts), index, dtype=float)]))
        stacked = np.vstack(rows)
        order = np.argsort(np.arctan2(stacked[:, 1], stacked[:, 0]), kind="stable")
        return stacked[order]


def basic_profile() -> BoatProfile:
    """The unit disk; B_r(disk) is the basic boat B_r."""
    return BoatProfile(
        patches=(EllipsePatch(a=0.0, alpha=1.0, beta=1.0, u_range=(-1.0, 1.0),
                              v_range=(-1.0, 1.0), name="disk"),),
        name="basic",
    )


def twisted_profile() -> BoatProfile:
    """The set C, a union of four quarter ellipses E₁..E₄."""
    return BoatProfile(
        patches=(
            EllipsePatch(a=0.5, alpha=4.0, beta=1.0, u_range=(0.5, 1.0), v_range=(0.0, 1.0), name="E1"),
            EllipsePatch(a=0.5, alpha=4.0 / 9.0, beta=1.0, u_range=(-1.0, 0.5), v_range=(0.0, 1.0), name="E2"),
            EllipsePatch(a=-0.5, alpha=4.0, beta=1.0, u_range=(-1.0, -0.5), v_range=(-1.0, 0.0), name="E3"),
            EllipsePatch(a=-0.5, alpha=4.0 / 9.0, beta=1.0, u_range=(-0.5, 1.0), v_range=(-1.0, 0.0), name="E4"),
        ),
        name="twisted",
    )


def half_ellipses() -> Tuple[EllipsePatch, EllipsePatch]:
    """E′₁ ⊂ E′₂, the upper halves used to sandwich B_r(E₁ ∪ E₂)."""
    inner = EllipsePatch(a=0.5, alpha=4.0, beta=1.0, u_range=(-1.0, 1.0), v_range=(0.0, 1.0), name="E1'")
    outer = EllipsePatch(a=0.5, alpha=4.0 / 9.0, beta=1.0, u_range=(-1.0, 1.0), v_range=(0.0, 1.0), name="E2'")
    return inner, outer
