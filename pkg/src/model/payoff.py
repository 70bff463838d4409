"""
Payoff space M = Φ(N), N = {w : w₂ = 0}, and the price rule π(z) = z₃.
"""

from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike

from ..errors import NotInPayoffSpaceError
from ..geometry.rotation import CANONICAL_ROTATION, Rotation

SPAN_TOL = 1e-9


def _default_basis() -> np.ndarray:
    return np.array([[1.0, 1.0, 1.0], [1.0, -1.0, 0.0]])


@dataclass(frozen=True)
class PayoffSpace:
    """The plane spanned by `basis` (rows); canonically (1,1,1) and (1,−1,0)."""

    basis: np.ndarray = field(default_factory=_default_basis)
    rotation: Rotation = CANONICAL_ROTATION

    def __post_init__(self):
        basis = np.asarray(self.basis, dtype=float)
        if basis.shape != (2, 3):
            raise ValueError(f"payoff basis must be two vectors of R³, got shape {basis.shape}")
        if np.linalg.matrix_rank(basis, tol=1e-12) < 2:
            raise ValueError("payoff basis vectors are linearly dependent")

    @property
    def normal(self) -> np.ndarray:
        """Unit normal of the plane."""
        n = np.cross(self.basis[0], self.basis[1])
        return n / np.linalg.norm(n)

    def distance(self, z: ArrayLike) -> np.ndarray:
        """Euclidean distance of z to the plane."""
        return np.abs(np.asarray(z, dtype=float) @ self.normal)

    def contains(self, z: ArrayLike, tol: float = SPAN_TOL) -> np.ndarray:
        return self.distance(z) <= tol

    def coordinates(self, z: ArrayLike) -> np.ndarray:
        """Least-squares coefficients (a, b) with z ≈ a·basis₀ + b·basis₁."""
        z = np.asarray(z, dtype=float)
        coeffs, *_ = np.linalg.lstsq(self.basis.T, z.T, rcond=None)
        return coeffs.T

    def rotated_images_on_n(self, tol: float = 1e-12) -> bool:
        """Both basis vectors have Φ⁻¹-image with vanishing second coordinate."""
        return bool(np.all(np.abs(self.rotation.apply_inverse(self.basis)[:, 1]) <= tol))

    def from_rotated(self, w1: ArrayLike, w3: ArrayLike) -> np.ndarray:
        """Φ(w₁, 0, w₃)."""
        w1, w3 = np.broadcast_arrays(np.asarray(w1, dtype=float), np.asarray(w3, dtype=float))
        w = np.stack([w1, np.zeros_like(w1), w3], axis=-1)
        return self.rotation.apply(w)


@dataclass(frozen=True)
class PriceFunctional:
    """π(z) = z₃ on the payoff space."""

    payoffs: PayoffSpace = field(default_factory=PayoffSpace)

    def __call__(self, z: ArrayLike) -> float:
        return self.price(z)

    def price(self, z: ArrayLike, tol: float = SPAN_TOL) -> float:
        z = np.asarray(z, dtype=float)
        gap = float(self.payoffs.distance(z))
        if gap > tol:
            raise NotInPayoffSpaceError(f"{z.tolist()} is {gap:.3e} away from the payoff span")
        return float(z[2])

    def prices(self, z: ArrayLike, tol: float = SPAN_TOL) -> np.ndarray:
        """Vectorized `price` over rows of z."""
        z = np.atleast_2d(np.asarray(z, dtype=float))
        gap = self.payoffs.distance(z)
        if np.any(gap > tol):
            raise NotInPayoffSpaceError(f"{int(np.sum(gap > tol))} rows lie off the payoff span")
        return z[:, 2].copy()

    def linearity_defect(self, z: ArrayLike, z_prime: ArrayLike, a: float, b: float) -> float:
        """|π(az + bz′) − aπ(z) − bπ(z′)|."""
        combo = a * np.asarray(z, dtype=float) + b * np.asarray(z_prime, dtype=float)
        return abs(self.price(combo) - a * self.price(z) - b * self.price(z_prime))


def price(z: ArrayLike) -> float:
    """π(z) on the canonical payoff space."""
    return CANONICAL_PRICE.price(z)


def payoff_from_coefficients(a: ArrayLike, b: ArrayLike) -> np.ndarray:
    """a(1,1,1) + b(1,−1,0), i.e. aΦ(0,0,√3) + bΦ(√2,0,0)."""
    a, b = np.broadcast_arrays(np.asarray(a, dtype=float), np.asarray(b, dtype=float))
    return np.stack([a + b, a - b, a], axis=-1)


CANONICAL_PAYOFFS = PayoffSpace()
CANONICAL_PRICE = PriceFunctional(CANONICAL_PAYOFFS)
