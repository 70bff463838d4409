"""
Solver tolerances
"""

from typing import Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, PositiveFloat, PositiveInt, model_validator


class SolverConfig(BaseModel):
    """
    Tolerances of the ρ / R(x) solver.

    Heights are resolved to relative machine precision, so `flat_tol` can sit
    far below the singleton threshold.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    band_tol: PositiveFloat = 1e-12
    search_tol: PositiveFloat = 1e-10
    flat_tol: PositiveFloat = 1e-14
    # general path: h is itself a bisection, so its floor is coarser
    general_search_tol: PositiveFloat = 1e-7
    general_flat_tol: PositiveFloat = 1e-7
    bisection_tol: PositiveFloat = 1e-11
    membership_tol: PositiveFloat = 1e-9
    singleton_width: PositiveFloat = 1e-4
    w3_cap: PositiveFloat = 1e3
    bracket_pad: PositiveFloat = 3.0
    bracket: Optional[Tuple[float, float]] = None
    max_expansions: PositiveInt = 20
    max_golden_iterations: PositiveInt = 200
    descent_iterations: PositiveInt = 200
    descent_restarts: int = Field(default=3, ge=0)

    @model_validator(mode="after")
    def _bracket_ordered(self) -> "SolverConfig":
        if self.bracket is not None and not self.bracket[0] < self.bracket[1]:
            raise ValueError(f"bracket must satisfy lo < hi, got {self.bracket}")
        return self


DEFAULT_CONFIG = SolverConfig()
