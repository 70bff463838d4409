"""
Admissible triples (A, M, π) with A = Φ(B) + R³₊.
"""

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from loguru import logger
from numpy.typing import ArrayLike

from ..geometry.boat import BoatSet, basic_boat, basic_cone_radius, twisted_boat, twisted_cone_radius
from ..geometry.profiles import BoatProfile, EllipsePatch
from ..geometry.rotation import CANONICAL_ROTATION, Rotation
from .payoff import CANONICAL_PAYOFFS, CANONICAL_PRICE, PayoffSpace, PriceFunctional

# Φ⁻¹(R³₊) ⊂ K_√2
ORTHANT_CONE_RADIUS = math.sqrt(2.0)


@dataclass(frozen=True)
class AdmissibleTriple:
    """
    Acceptance set A = Φ(B) + R³₊ together with its payoff space and price.

    `monotonicity_radius` is the R for which (B + K_R) ∩ {x₃ ≤ 1} = B is
    known; `cone_radius_check` is the opening of a cone containing Φ⁻¹(R³₊).
    """

    name: str
    boat: BoatSet
    monotonicity_radius: float
    cone_radius_check: float = ORTHANT_CONE_RADIUS
    rotation: Rotation = CANONICAL_ROTATION
    payoffs: PayoffSpace = field(default=CANONICAL_PAYOFFS)
    price: PriceFunctional = field(default=CANONICAL_PRICE)

    @property
    def r(self) -> float:
        return self.boat.r

    @property
    def band_exact(self) -> bool:
        """Whether B + Φ⁻¹(R³₊) agrees with B below the top slice."""
        return self.monotonicity_radius >= self.cone_radius_check

    @property
    def generators(self) -> np.ndarray:
        """Rows g_i = Φ⁻¹(e_i)."""
        return self.rotation.cone_generators

    def to_rotated(self, x: ArrayLike) -> np.ndarray:
        return self.rotation.apply_inverse(x)

    def accepts(self, x: ArrayLike) -> bool:
        """x ∈ A."""
        from ..solver.membership import acceptance_membership

        return acceptance_membership(self.to_rotated(x), self)


def basic_triple() -> AdmissibleTriple:
    boat = basic_boat(3.0)
    return AdmissibleTriple(name="basic", boat=boat, monotonicity_radius=basic_cone_radius(boat.r))


def twisted_triple() -> AdmissibleTriple:
    boat = twisted_boat(16.0)
    return AdmissibleTriple(name="twisted", boat=boat, monotonicity_radius=twisted_cone_radius(boat.r))


def custom_triple(r: float, patches: Sequence[EllipsePatch], cone_R: float, name: str = "custom") -> AdmissibleTriple:
    """
    A triple from user parameters. Admissibility is not assumed: with
    cone_R < √2 the solver falls back to the full cone-sum search.
    """
    triple = AdmissibleTriple(
        name=name,
        boat=BoatSet(r=r, profile=BoatProfile(patches=tuple(patches), name=name)),
        monotonicity_radius=cone_R,
    )
    if not triple.band_exact:
        logger.warning(f"[MODEL] cone_R={cone_R:.6g} < √2: band identity not certified for '{name}'")
    return triple


def triple_by_name(name: str) -> AdmissibleTriple:
    builders = {"basic": basic_triple, "twisted": twisted_triple}
    if name not in builders:
        raise ValueError(f"unknown canonical model '{name}' (expected one of {sorted(builders)})")
    return builders[name]()


def no_arbitrage_margin(triple: AdmissibleTriple, samples: int, rng: Optional[np.random.Generator] = None) -> float:
    """
    min π(z)/‖z‖∞ over sampled nonzero z ∈ M ∩ R³₊; positive iff no
    arbitrage was found.
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    rng = rng if rng is not None else np.random.default_rng(0)
    a = rng.uniform(0.0, 1.0, samples)
    b = rng.uniform(-1.0, 1.0, samples) * a
    # edges of the cone M ∩ R³₊
    b[: samples // 10] = a[: samples // 10] * np.sign(b[: samples // 10])
    z = a[:, None] * triple.payoffs.basis[0] + b[:, None] * triple.payoffs.basis[1]
    keep = np.all(z >= -1e-12, axis=1) & (np.max(np.abs(z), axis=1) > 1e-12)
    z = z[keep]
    if len(z) == 0:
        return math.inf
    prices = triple.price.prices(z)
    return float(np.min(prices / np.max(np.abs(z), axis=1)))


def check_no_arbitrage(triple: AdmissibleTriple, samples: int, rng: Optional[np.random.Generator] = None) -> bool:
    """π(z) > 0 on every sampled nonzero nonnegative payoff."""
    margin = no_arbitrage_margin(triple, samples, rng)
    if margin <= 0.0:
        logger.warning(f"[MODEL] arbitrage found for '{triple.name}': margin {margin:.3e}")
    return margin > 0.0
