"""
Boundary functions of the boat bodies and their gradients.

f_r is the closed-form lower boundary of the basic boat; F is the implicit
representation of one ellipse patch; the implicit boundary function of a
general B_r(E) is evaluated by bisection on the height.
"""

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from numpy.typing import ArrayLike

from ..errors import DegenerateInputError, InfeasibleColumnError
from .boat import MEMBERSHIP_SLACK, BoatSet
from .profiles import EllipsePatch

MIN_GRADIENT_HEIGHT = 1e-8
MIN_D3F = 1e-12


def _scalar_or_array(value: np.ndarray):
    return float(value) if np.ndim(value) == 0 else value


# ==================== Basic boat ====================

def f_basic(x1: ArrayLike, x2: ArrayLike, r: float):
    """
    f_r(x₁, x₂) = (s + √(s² + 4x₂²)) / (2r²) with s = x₁² + x₂² − 1.

    For s < 0 the numerator is rewritten as 4x₂² / (√(s² + 4x₂²) − s) to
    avoid cancellation.
    """
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    s = x1 ** 2 + x2 ** 2 - 1.0
    root = np.sqrt(s ** 2 + 4.0 * x2 ** 2)
    with np.errstate(divide="ignore", invalid="ignore"):
        numerator = np.where(s >= 0.0, s + root, 4.0 * x2 ** 2 / (root - s))
    return _scalar_or_array(numerator / (2.0 * r ** 2))


def basic_membership(x: ArrayLike, r: float, slack: float = MEMBERSHIP_SLACK):
    """x ∈ B_r as a section of the epigraph of f_r."""
    x = np.asarray(x, dtype=float)
    x3 = x[..., 2]
    inside = (x3 >= -slack) & (x3 <= 1.0 + slack) & (f_basic(x[..., 0], x[..., 1], r) <= x3 + slack)
    return bool(inside) if np.ndim(inside) == 0 else inside


def ellipsoid_membership_basic(x: ArrayLike, r: float, slack: float = MEMBERSHIP_SLACK):
    """x ∈ B_r from the slice definition x₁²/(1+r²x₃) + x₂²/(r²x₃) ≤ 1."""
    x = np.asarray(x, dtype=float)
    x1, x2, x3 = x[..., 0], x[..., 1], x[..., 2]
    positive = x3 > 0.0
    safe = np.where(positive, x3, 1.0)
    level = x1 ** 2 / (1.0 + r ** 2 * safe) + x2 ** 2 / (r ** 2 * safe)
    upper = level <= 1.0 + slack
    flat = (np.abs(x2) <= slack) & (np.abs(x1) <= 1.0 + slack)
    inside = (x3 >= -slack) & (x3 <= 1.0 + slack) & np.where(positive, upper, flat)
    return bool(inside) if np.ndim(inside) == 0 else inside


def grad_f_basic(x1: ArrayLike, x2: ArrayLike, r: float) -> Tuple:
    """
    (∂₁f_r, ∂₂f_r) = (x₁(D+s), x₂(D+s+2)) / (r²D) with D = √(s²+4x₂²).

    Raises DegenerateInputError on the flat segment where f_r vanishes.
    """
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    if np.any(np.asarray(f_basic(x1, x2, r)) < MIN_GRADIENT_HEIGHT):
        raise DegenerateInputError("gradient of f_r requested where f_r vanishes")
    s = x1 ** 2 + x2 ** 2 - 1.0
    root = np.sqrt(s ** 2 + 4.0 * x2 ** 2)
    d1 = x1 * (root + s) / (r ** 2 * root)
    d2 = x2 * (root + s + 2.0) / (r ** 2 * root)
    return _scalar_or_array(d1), _scalar_or_array(d2)


def basic_gradient_bound(r: float) -> float:
    """Bound 4(1+r²)/r⁴ on ‖∇f_r‖² along the boundary of B_r."""
    return 4.0 * (1.0 + r ** 2) / r ** 4


# ==================== Patch representation ====================

def patch_F(x: ArrayLike, r: float, patch: EllipsePatch):
    """F(x) = (r²x₃/β)(α(u−a)²−1) + x₂², u = x₁/√(1+r²x₃)."""
    x = np.asarray(x, dtype=float)
    x1, x2, x3 = x[..., 0], x[..., 1], x[..., 2]
    u = x1 / np.sqrt(1.0 + r ** 2 * x3)
    value = (r ** 2 * x3 / patch.beta) * (patch.alpha * (u - patch.a) ** 2 - 1.0) + x2 ** 2
    return _scalar_or_array(value)


def grad_patch_F(x: ArrayLike, r: float, patch: EllipsePatch) -> np.ndarray:
    """Analytic (∂₁F, ∂₂F, ∂₃F), shape (..., 3)."""
    x = np.asarray(x, dtype=float)
    x1, x2, x3 = x[..., 0], x[..., 1], x[..., 2]
    scale = 1.0 + r ** 2 * x3
    u = x1 / np.sqrt(scale)
    shift = u - patch.a
    d1 = (r ** 2 * x3 / patch.beta) * 2.0 * patch.alpha * shift / np.sqrt(scale)
    d2 = 2.0 * x2
    d3 = (r ** 2 / patch.beta) * (
        (patch.alpha * shift ** 2 - 1.0) - patch.alpha * r ** 2 * x3 * shift * u / scale
    )
    return np.stack(np.broadcast_arrays(d1, d2, d3), axis=-1)


def patch_gradient(x: ArrayLike, r: float, patch: EllipsePatch) -> np.ndarray:
    """
    ∇f = −(∂₁F, ∂₂F)/∂₃F at boundary points of B_r(patch), shape (..., 2).
    """
    x = np.asarray(x, dtype=float)
    if np.any(x[..., 2] < MIN_GRADIENT_HEIGHT):
        raise DegenerateInputError("implicit gradient requested at height below 1e-8")
    dF = grad_patch_F(x, r, patch)
    if np.any(np.abs(dF[..., 2]) < MIN_D3F):
        raise DegenerateInputError(f"∂₃F vanishes on patch {patch.name or '?'}")
    return -dF[..., :2] / dF[..., 2:3]


# ==================== Implicit boundary function ====================

def patch_f_implicit(x1: float, x2: float, boat: BoatSet) -> float:
    """Least x₃ ∈ [0, 1] with (x₁, x₂, x₃) ∈ B_r(E)."""
    height = boat.height(x1, x2)
    if height > 1.0 + MEMBERSHIP_SLACK:
        raise InfeasibleColumnError(float(x1), float(x2), height)
    return height


def grad_patch_f(x1: float, x2: float, boat: BoatSet) -> Tuple[float, float]:
    """Gradient of the implicit boundary function through the active patch."""
    height = patch_f_implicit(x1, x2, boat)
    if height < MIN_GRADIENT_HEIGHT:
        raise DegenerateInputError(f"column ({x1:.6g}, {x2:.6g}) sits on the bottom segment")
    u, v = boat.profile_coordinates(x1, x2, height)
    index = boat.profile.active_patch(float(u), float(v))
    if index < 0:
        raise DegenerateInputError(f"no patch carries ({float(u):.6g}, {float(v):.6g})")
    grad = patch_gradient(np.array([x1, x2, height]), boat.r, boat.profile.patches[index])
    return float(grad[0]), float(grad[1])


def implicit_gradient(x: ArrayLike, boat: BoatSet) -> np.ndarray:
    """Vectorized gradient at boundary points x (shape (n, 3)) of B_r(E)."""
    x = np.atleast_2d(np.asarray(x, dtype=float))
    u, v = boat.profile_coordinates(x[:, 0], x[:, 1], x[:, 2])
    active = boat.profile.active_patches(u, v)
    if np.any(active < 0):
        raise DegenerateInputError("boundary sample outside every patch")
    grads = np.empty((len(x), 2))
    for index, patch in enumerate(boat.profile.patches):
        rows = active == index
        if np.any(rows):
            grads[rows] = patch_gradient(x[rows], boat.r, patch)
    return grads


# ==================== Gradient bounds for tilted patches ====================

def tilted_bound_literal(r: float) -> float:
    """2/r, the bound as usually quoted for the side u − a ≥ 0."""
    return 2.0 / r


def tilted_bound_corrected(r: float) -> float:
    """2√(1+r²)/r², attained at the far tip u − a = 1/√α when α a² = 1."""
    return 2.0 * math.sqrt(1.0 + r ** 2) / r ** 2


def tilted_bound_two(r: float, patch: EllipsePatch) -> float:
    """16·max{αr²/(r²+1), 1} / (r(8 − 9αa²)), valid when 8 > 9αa²."""
    margin = 8.0 - 9.0 * patch.alpha * patch.a ** 2
    if margin <= 0.0:
        raise ValueError(f"bound needs 8 > 9αa², got 9αa² = {9.0 * patch.alpha * patch.a ** 2}")
    return 16.0 * max(patch.alpha * r ** 2 / (r ** 2 + 1.0), 1.0) / (r * margin)


@dataclass(frozen=True)
class ParameterConditions:
    """Side conditions under which the tilted gradient bounds are proven."""

    a_nonnegative: bool
    alpha_below_5: bool
    r_large_enough: bool
    eight_exceeds_9aa: bool
    center_inside: bool

    @property
    def all_hold(self) -> bool:
        return all((self.a_nonnegative, self.alpha_below_5, self.r_large_enough,
                    self.eight_exceeds_9aa, self.center_inside))


def tilted_parameter_conditions(r: float, patch: EllipsePatch) -> ParameterConditions:
    """Evaluate the conditions for `patch`, mirrored so that a ≥ 0."""
    a = abs(patch.a)
    alpha = patch.alpha
    r_floor = max(math.sqrt(2.0), 1.0 / math.sqrt(5.0 - alpha)) if alpha < 5.0 else math.inf
    return ParameterConditions(
        a_nonnegative=a >= 0.0,
        alpha_below_5=alpha < 5.0,
        r_large_enough=r > r_floor,
        eight_exceeds_9aa=8.0 > 9.0 * alpha * a ** 2,
        center_inside=a <= 1.0 / math.sqrt(alpha) + 1e-15,
    )
