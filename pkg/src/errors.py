"""
Exception hierarchy for hedgemap.
"""


class HedgemapError(Exception):
    """Base class for every error raised by hedgemap."""


class DegenerateInputError(HedgemapError):
    """An analytic quantity was requested where its formula degenerates."""


class InfeasibleColumnError(HedgemapError):
    """No height x3 in [0, 1] places the column (x1, x2) inside the body."""

    def __init__(self, x1: float, x2: float, height: float):
        self.x1 = x1
        self.x2 = x2
        self.height = height
        super().__init__(
            f"column ({x1:.6g}, {x2:.6g}) needs height {height:.6g} > 1"
        )


class NotInPayoffSpaceError(HedgemapError):
    """A price was requested for a vector outside the payoff span."""


class SolverInfeasibleError(HedgemapError):
    """No price level up to the search cap makes the position acceptable."""


class NonSingletonError(HedgemapError):
    """A forced-selection argument met an optimal set that is not a point."""

    def __init__(self, index: int, width: float):
        self.index = index
        self.width = width
        super().__init__(f"optimal set of term {index} has width {width:.3e}")


class ModelDescriptorError(HedgemapError):
    """The JSON model descriptor is malformed or inconsistent."""
