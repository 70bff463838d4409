"""
Perturbation sequences converging to 0.

basic_lsc:            Φ(0, r/√n, 1/n)
twisted_alternating:  Φ(0, −r/√n, 0) for odd terms, Φ(0, r/√n, 0) for even terms
custom:               an explicit list of points
"""

import math
from typing import List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PositiveFloat, model_validator

from ..geometry.rotation import rotate

DEFAULT_R = {"basic_lsc": 3.0, "twisted_alternating": 16.0}


class SequenceSpec(BaseModel):
    """
    A sequence of positions. `spacing="geometric"` takes n = ratio^(k−1)
    (per parity for the alternating kind) so the tail reaches large n with
    few solves.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["basic_lsc", "twisted_alternating", "custom"]
    n_max: int = Field(default=100, ge=1)
    r: Optional[PositiveFloat] = None
    spacing: Literal["linear", "geometric"] = "linear"
    ratio: int = Field(default=4, ge=2)
    points: Optional[List[Tuple[float, float, float]]] = None
    shift: Tuple[float, float, float] = (0.0, 0.0, 0.0)

    @model_validator(mode="after")
    def _check(self) -> "SequenceSpec":
        if self.kind == "custom":
            if not self.points:
                raise ValueError("a custom sequence needs points")
            if len(self.points) != self.n_max:
                raise ValueError(f"custom sequence has {len(self.points)} points but n_max={self.n_max}")
        elif self.points is not None:
            raise ValueError(f"kind '{self.kind}' generates its own points")
        norms = np.linalg.norm(self._raw_terms(), axis=1)
        if norms[-1] > norms[0] + 1e-12:
            raise ValueError("sequence does not approach 0: last term is farther than the first")
        return self

    @property
    def radius(self) -> float:
        return self.r if self.r is not None else DEFAULT_R.get(self.kind, 1.0)

    def parameters(self) -> List[int]:
        """The n of each term."""
        if self.kind == "twisted_alternating":
            steps = [math.ceil(k / 2) for k in range(1, self.n_max + 1)]
        else:
            steps = list(range(1, self.n_max + 1))
        if self.spacing == "geometric":
            return [self.ratio ** (step - 1) for step in steps]
        return steps

    def parities(self) -> List[str]:
        return ["odd" if k % 2 else "even" for k in range(1, self.n_max + 1)]

    def _raw_terms(self) -> np.ndarray:
        if self.kind == "custom":
            return np.asarray(self.points, dtype=float)
        n = np.asarray(self.parameters(), dtype=float)
        r = self.radius
        if self.kind == "basic_lsc":
            rotated = np.column_stack([np.zeros_like(n), r / np.sqrt(n), 1.0 / n])
        else:
            sign = np.where(np.arange(1, self.n_max + 1) % 2 == 1, -1.0, 1.0)
            rotated = np.column_stack([np.zeros_like(n), sign * r / np.sqrt(n), np.zeros_like(n)])
        return rotate(rotated)

    def terms(self) -> np.ndarray:
        """Positions x of every term (shape (n_max, 3)), shift included."""
        return self._raw_terms() + np.asarray(self.shift, dtype=float)


def constant_sequence(point, n_max: int) -> SequenceSpec:
    """The sequence that repeats `point`."""
    return SequenceSpec(kind="custom", n_max=n_max, points=[tuple(map(float, point))] * n_max)
