"""
Boat-shaped bodies B_r(E) and ice-cream cones K_R.

B_r(E) = {(u√(1+r²x₃), v r√x₃, x₃) : (u, v) ∈ E, x₃ ∈ [0, 1]}.
"""

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from .profiles import BoatProfile, basic_profile, twisted_profile

MEMBERSHIP_SLACK = 1e-9
HEIGHT_TOL = 1e-14
HEIGHT_RTOL = 4.0 * np.finfo(float).eps
MAX_HEIGHT_DOUBLINGS = 40
MAX_BISECTIONS = 200


@dataclass(frozen=True)
class BoatSet:
    """The body B_r(E) for a profile E and shape parameter r > 0."""

    r: float
    profile: BoatProfile

    def __post_init__(self):
        if not self.r > 0:
            raise ValueError(f"r must be positive, got {self.r}")

    def profile_coordinates(self, x1: ArrayLike, x2: ArrayLike, x3: ArrayLike):
        """(u, v) of a point with x₃ > 0; v is inf/nan where x₃ = 0."""
        x1 = np.asarray(x1, dtype=float)
        x2 = np.asarray(x2, dtype=float)
        x3 = np.asarray(x3, dtype=float)
        u = x1 / np.sqrt(1.0 + self.r ** 2 * np.maximum(x3, 0.0))
        with np.errstate(divide="ignore", invalid="ignore"):
            v = x2 / (self.r * np.sqrt(np.maximum(x3, 0.0)))
        return u, v

    def slice_contains(self, x1: ArrayLike, x2: ArrayLike, x3: ArrayLike, slack: float = 0.0) -> np.ndarray:
        """
        Whether (x₁, x₂) lies in the slice at height x₃ ≥ 0 (x₃ may exceed 1:
        the slices continue past the top and define the extended height).
        """
        x1, x2, x3 = np.broadcast_arrays(
            np.asarray(x1, dtype=float), np.asarray(x2, dtype=float), np.asarray(x3, dtype=float)
        )
        positive = x3 > 0.0
        u, v = self.profile_coordinates(x1, x2, np.where(positive, x3, 1.0))
        upper = self.profile.contains(u, v, slack)
        # degenerate slice: the segment {(u, 0) ∈ E} at x₃ = 0
        flat = (np.abs(x2) <= slack) & self.profile.contains(x1, np.zeros_like(x1), slack)
        return np.where(positive, upper, flat)

    def contains(self, x: ArrayLike, slack: float = MEMBERSHIP_SLACK) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        x1, x2, x3 = x[..., 0], x[..., 1], x[..., 2]
        in_band = (x3 >= -slack) & (x3 <= 1.0 + slack)
        return in_band & self.slice_contains(x1, x2, np.clip(x3, 0.0, None), slack)

    def column_height(self, x1: ArrayLike, x2: ArrayLike, tol: float = HEIGHT_TOL) -> np.ndarray:
        """
        Least t ≥ 0 with (x₁, x₂) in the slice at height t, by bisection on the
        slack-free slice predicate. Heights above 1 belong to the continued
        family of slices; inf where no height up to 2**40 works.
        """
        x1, x2 = np.broadcast_arrays(np.asarray(x1, dtype=float), np.asarray(x2, dtype=float))
        x1 = x1.astype(float)
        x2 = x2.astype(float)
        at_zero = self.slice_contains(x1, x2, np.zeros_like(x1))

        lo = np.zeros_like(x1)
        hi = np.ones_like(x1)
        found = at_zero | self.slice_contains(x1, x2, hi)
        for _ in range(MAX_HEIGHT_DOUBLINGS):
            if found.all():
                break
            lo = np.where(found, lo, hi)
            hi = np.where(found, hi, 2.0 * hi)
            found = found | self.slice_contains(x1, x2, hi)

        for _ in range(MAX_BISECTIONS):
            width = hi - lo
            if not np.any(width > np.maximum(tol, 4.0 * np.finfo(float).eps * hi)):
                break
            mid = 0.5 * (lo + hi)
            inside = self.slice_contains(x1, x2, mid)
            hi = np.where(inside, mid, hi)
            lo = np.where(inside, lo, mid)

        height = np.where(at_zero, 0.0, hi)
        return np.where(found, height, np.inf)

    def _slice_holds(self, x1: float, x2: float, t: float) -> bool:
        if t <= 0.0:
            return x2 == 0.0 and self.profile.holds(x1, 0.0)
        u = x1 / math.sqrt(1.0 + self.r * self.r * t)
        v = x2 / (self.r * math.sqrt(t))
        return self.profile.holds(u, v)

    def height(self, x1: float, x2: float, abs_tol: float = 0.0, rel_tol: float = HEIGHT_RTOL) -> float:
        """
        Scalar `column_height` on plain floats. The default stopping rule is
        relative, so tiny heights near the bottom keep full precision.
        """
        x1 = float(x1)
        x2 = float(x2)
        if self._slice_holds(x1, x2, 0.0):
            return 0.0
        lo, hi = 0.0, 1.0
        for _ in range(MAX_HEIGHT_DOUBLINGS):
            if self._slice_holds(x1, x2, hi):
                break
            lo, hi = hi, 2.0 * hi
        else:
            return math.inf
        for _ in range(MAX_BISECTIONS):
            if hi - lo <= max(abs_tol, rel_tol * hi):
                break
            mid = 0.5 * (lo + hi)
            if self._slice_holds(x1, x2, mid):
                hi = mid
            else:
                lo = mid
        return hi

    def slice_gauge(self, x1: float, x2: float, t: float = 1.0) -> float:
        """Gauge of the slice at height t > 0; ≤ 1 exactly on the slice."""
        return self.profile.gauge(
            x1 / math.sqrt(1.0 + self.r * self.r * t),
            x2 / (self.r * math.sqrt(t)),
        )


@dataclass(frozen=True)
class IceCreamCone:
    """K_R = {x : x₁² + x₂² ≤ R² x₃², x₃ ≥ 0}."""

    R: float

    def __post_init__(self):
        if not self.R > 0:
            raise ValueError(f"R must be positive, got {self.R}")

    def contains(self, x: ArrayLike, slack: float = MEMBERSHIP_SLACK) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        x1, x2, x3 = x[..., 0], x[..., 1], x[..., 2]
        return (x3 >= -slack) & (x1 ** 2 + x2 ** 2 <= self.R ** 2 * x3 ** 2 + slack)


def cone_membership(x: ArrayLike, cone: IceCreamCone) -> bool:
    return bool(cone.contains(x))


def basic_boat(r: float = 3.0) -> BoatSet:
    return BoatSet(r=r, profile=basic_profile())


def twisted_boat(r: float = 16.0) -> BoatSet:
    return BoatSet(r=r, profile=twisted_profile())


def basic_cone_radius(r: float) -> float:
    """Largest R for which B_r + K_R stays inside B_r below height 1."""
    return r ** 2 / (2.0 * np.sqrt(1.0 + r ** 2))


def twisted_cone_radius(r: float) -> float:
    return 7.0 * r / 16.0


def slice_axes(h: float, r: float):
    """Axis lengths 2√(1+r²h) and 2r√h of the basic slice S(h)."""
    return 2.0 * np.sqrt(1.0 + r ** 2 * h), 2.0 * r * np.sqrt(h)


def slice_outline(h: float, boat: BoatSet, n: int = 256) -> np.ndarray:
    """Boundary samples (x₁, x₂) of the slice of `boat` at height h > 0."""
    pts = boat.profile.outline(n)
    scale_u = np.sqrt(1.0 + boat.r ** 2 * h)
    scale_v = boat.r * np.sqrt(h)
    return np.column_stack([pts[:, 0] * scale_u, pts[:, 1] * scale_v])
