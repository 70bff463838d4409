"""
The fixed isometry Φ of R³ and its inverse.
"""

from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike
from scipy.spatial.transform import Rotation as AxisRotation

SQRT2 = np.sqrt(2.0)
SQRT3 = np.sqrt(3.0)
SQRT6 = np.sqrt(6.0)

PHI = np.array([
    [1.0 / SQRT2, 1.0 / SQRT6, 1.0 / SQRT3],
    [-1.0 / SQRT2, 1.0 / SQRT6, 1.0 / SQRT3],
    [0.0, -SQRT2 / SQRT3, 1.0 / SQRT3],
])
PHI.setflags(write=False)


@dataclass(frozen=True)
class Rotation:
    """
    A rotation of R³ given by its matrix.

    Points are numpy arrays whose last axis has length 3, so a single point
    and a batch of points go through the same code.
    """

    matrix: np.ndarray = field(default_factory=lambda: PHI)

    def apply(self, x: ArrayLike) -> np.ndarray:
        return np.asarray(x, dtype=float) @ self.matrix.T

    def apply_inverse(self, x: ArrayLike) -> np.ndarray:
        return np.asarray(x, dtype=float) @ self.matrix

    def orthogonality_error(self) -> float:
        """Largest entry of |MᵀM − I|."""
        return float(np.max(np.abs(self.matrix.T @ self.matrix - np.eye(3))))

    def determinant(self) -> float:
        return float(np.linalg.det(self.matrix))

    @property
    def cone_generators(self) -> np.ndarray:
        """Rows g_i = Φ⁻¹(e_i), the generators of Φ⁻¹(R³₊)."""
        return self.matrix.copy()


CANONICAL_ROTATION = Rotation()


def as_point3(x: ArrayLike) -> np.ndarray:
    """Validate and convert to a finite float vector of length 3."""
    point = np.asarray(x, dtype=float)
    if point.shape != (3,):
        raise ValueError(f"expected a point of R³, got shape {point.shape}")
    if not np.all(np.isfinite(point)):
        raise ValueError(f"point has non-finite coordinates: {point}")
    return point


def rotate(x: ArrayLike) -> np.ndarray:
    """Φ(x)."""
    return CANONICAL_ROTATION.apply(x)


def rotate_inv(x: ArrayLike) -> np.ndarray:
    """Φ⁻¹(x) = Φᵀx."""
    return CANONICAL_ROTATION.apply_inverse(x)


def rotation_from_axes() -> Rotation:
    """
    Build Φ from its two elementary rotations: clockwise by π/4 about e₃,
    then clockwise by ϑ (cos ϑ = 1/√3) about (1/√2, −1/√2, 0).
    """
    about_e3 = AxisRotation.from_rotvec(-np.pi / 4 * np.array([0.0, 0.0, 1.0]))
    theta = np.arctan2(SQRT2 / SQRT3, 1.0 / SQRT3)
    axis = np.array([1.0, -1.0, 0.0]) / SQRT2
    about_axis = AxisRotation.from_rotvec(-theta * axis)
    return Rotation(matrix=(about_axis * about_e3).as_matrix())
