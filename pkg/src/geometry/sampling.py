"""
Seeded random samplers for bodies, boundaries and cones.
"""

from typing import Optional, Sequence, Tuple

import numpy as np

from .boat import BoatSet
from .profiles import BoatProfile, EllipsePatch

MAX_REJECTION_ROUNDS = 64


def sample_profile(profile: BoatProfile, n: int, rng: np.random.Generator) -> np.ndarray:
    """n points of the profile by rejection from its bounding box, shape (n, 2)."""
    (u_lo, u_hi), (v_lo, v_hi) = profile.bounding_box()
    kept = []
    total = 0
    for _ in range(MAX_REJECTION_ROUNDS):
        u = rng.uniform(u_lo, u_hi, 2 * n)
        v = rng.uniform(v_lo, v_hi, 2 * n)
        inside = profile.contains(u, v)
        kept.append(np.column_stack([u[inside], v[inside]]))
        total += int(inside.sum())
        if total >= n:
            break
    return np.vstack(kept)[:n]


def lift(boat: BoatSet, uv: np.ndarray, x3: np.ndarray) -> np.ndarray:
    """Map profile coordinates and heights to points (u√(1+r²x₃), v r√x₃, x₃)."""
    x3 = np.asarray(x3, dtype=float)
    return np.column_stack([
        uv[:, 0] * np.sqrt(1.0 + boat.r ** 2 * x3),
        uv[:, 1] * boat.r * np.sqrt(x3),
        x3,
    ])


def sample_body(boat: BoatSet, n: int, rng: np.random.Generator, x3_low: float = 0.0) -> np.ndarray:
    """n points of B_r(E) with heights uniform on [x3_low, 1]."""
    uv = sample_profile(boat.profile, n, rng)
    return lift(boat, uv, rng.uniform(x3_low, 1.0, n))


def sample_arc(patch: EllipsePatch, n: int, rng: np.random.Generator) -> np.ndarray:
    """n points on the arc of `patch` inside its ranges, shape (n, 2)."""
    kept = []
    total = 0
    for _ in range(MAX_REJECTION_ROUNDS):
        theta = rng.uniform(0.0, 2.0 * np.pi, 2 * n)
        u = patch.a + np.cos(theta) / np.sqrt(patch.alpha)
        v = np.sin(theta) / np.sqrt(patch.beta)
        inside = patch.in_ranges(u, v, 1e-12)
        kept.append(np.column_stack([u[inside], v[inside]]))
        total += int(inside.sum())
        if total >= n:
            break
    return np.vstack(kept)[:n]


def sample_boundary(
    boat: BoatSet,
    n: int,
    rng: np.random.Generator,
    x3_range: Tuple[float, float] = (1e-6, 1.0),
    patches: Optional[Sequence[int]] = None,
    top_fraction: float = 0.2,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    n points on the lower boundary surface of B_r(E) and the index of the
    patch each lies on. A `top_fraction` share sits exactly at x₃ = 1.
    """
    indices = list(range(len(boat.profile.patches))) if patches is None else list(patches)
    choice = rng.choice(indices, size=n)
    uv = np.empty((n, 2))
    for index in indices:
        rows = choice == index
        count = int(rows.sum())
        if count:
            uv[rows] = sample_arc(boat.profile.patches[index], count, rng)
    x3 = rng.uniform(x3_range[0], x3_range[1], n)
    x3[: int(top_fraction * n)] = x3_range[1]
    return lift(boat, uv, x3), choice


def sample_cone(R: float, heights: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """One point of K_R per entry of `heights`, with x₃ uniform on [0, height]."""
    heights = np.asarray(heights, dtype=float)
    k3 = rng.uniform(0.0, 1.0, heights.shape) * heights
    radius = R * k3 * np.sqrt(rng.uniform(0.0, 1.0, heights.shape))
    angle = rng.uniform(0.0, 2.0 * np.pi, heights.shape)
    return np.column_stack([radius * np.cos(angle), radius * np.sin(angle), k3])


def sample_orthant(n: int, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    """Nonnegative combinations of the standard basis, shape (n, 3)."""
    return rng.exponential(scale, (n, 3))
