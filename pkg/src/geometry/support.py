"""
Support functions of the sublevel sets L(t) = {f ≤ t} of a patch body.

L(t) is the ellipse {(u√(1+r²t), v r√t) : α(u−a)² + βv² ≤ 1}.
"""

import numpy as np
from numpy.typing import ArrayLike

from .profiles import EllipsePatch


def support_sigma(s: ArrayLike, t: ArrayLike, r: float, patch: EllipsePatch):
    """
    σ_s(t) = √(s₁²(1+r²t)/α + s₂²r²t/β) + a s₁ √(1+r²t).

    `s` has shape (..., 2) and broadcasts against `t`.
    """
    s = np.asarray(s, dtype=float)
    t = np.asarray(t, dtype=float)
    s1, s2 = s[..., 0], s[..., 1]
    stretch = np.sqrt(1.0 + r ** 2 * t)
    value = (
        np.sqrt(s1 ** 2 * stretch ** 2 / patch.alpha + s2 ** 2 * r ** 2 * t / patch.beta)
        + patch.a * s1 * stretch
    )
    return float(value) if np.ndim(value) == 0 else value


def support_sigma_axis(s1: float, t: ArrayLike, r: float, patch: EllipsePatch):
    """σ_s(t) for s = (s₁, 0): √(1+r²t)(|s₁|/√α + a s₁)."""
    t = np.asarray(t, dtype=float)
    value = np.sqrt(1.0 + r ** 2 * t) * (abs(s1) / np.sqrt(patch.alpha) + patch.a * s1)
    return float(value) if np.ndim(value) == 0 else value


def support_sigma_sampled(s: ArrayLike, t: float, r: float, patch: EllipsePatch, n: int = 4096) -> float:
    """Max of ⟨s, x⟩ over n boundary samples of L(t); a cross-check for the closed form."""
    s = np.asarray(s, dtype=float)
    theta = np.linspace(0.0, 2.0 * np.pi, n, endpoint=False)
    x1 = np.sqrt(1.0 + r ** 2 * t) * (patch.a + np.cos(theta) / np.sqrt(patch.alpha))
    x2 = r * np.sqrt(t) * np.sin(theta) / np.sqrt(patch.beta)
    return float(np.max(s[0] * x1 + s[1] * x2))


def concavity_defect(s: ArrayLike, t1: ArrayLike, t2: ArrayLike, r: float, patch: EllipsePatch) -> np.ndarray:
    """(σ(t₁) + σ(t₂))/2 − σ((t₁+t₂)/2); nonpositive wherever σ_s is concave."""
    s = np.asarray(s, dtype=float)
    t1 = np.asarray(t1, dtype=float)
    t2 = np.asarray(t2, dtype=float)
    mid = support_sigma(s, 0.5 * (t1 + t2), r, patch)
    return 0.5 * (support_sigma(s, t1, r, patch) + support_sigma(s, t2, r, patch)) - mid
