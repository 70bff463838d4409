"""
Stability probes for the optimal set mapping R.

lsc_probe measures how far a point of R(x) stays from R(y⁽ⁿ⁾) as y⁽ⁿ⁾ → x;
selection_oscillation follows the forced selection through singleton
optimal sets and measures the distance between its two cluster points.
"""

import asyncio
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np
from loguru import logger
from numpy.typing import ArrayLike

from ..errors import NonSingletonError
from ..geometry.rotation import as_point3
from ..model.triple import AdmissibleTriple
from ..solver.batch import ParallelSolver
from ..solver.config import DEFAULT_CONFIG, SolverConfig
from ..solver.rho import OptimalSet, optimal_set
from .distance import point_segment_distance
from .sequences import SequenceSpec

SINGLETON_WIDTH = 1e-4


def _tail_start(count: int) -> int:
    """First index of the tail half used for liminf."""
    return count // 2


@dataclass
class LscReport:
    x: np.ndarray
    witness: np.ndarray
    gap: float
    distances: List[float]
    parameters: List[int]
    base: Dict[str, Any] = field(default_factory=dict)
    widths: List[float] = field(default_factory=list)

    def per_n(self) -> List[Dict[str, float]]:
        return [
            {"index": i + 1, "n": n, "distance": d, "width": w}
            for i, (n, d, w) in enumerate(zip(self.parameters, self.distances, self.widths))
        ]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "x": [float(v) for v in self.x],
            "witness": [float(v) for v in self.witness],
            "gap": float(self.gap),
            "base": self.base,
            "per_n": self.per_n(),
        }


@dataclass
class SelectionReport:
    odd_limit: np.ndarray
    even_limit: np.ndarray
    oscillation: float
    values: np.ndarray
    parameters: List[int]
    parities: List[str]
    widths: List[float]

    def per_n(self) -> List[Dict[str, Any]]:
        return [
            {
                "index": i + 1, "n": n, "parity": parity,
                "z1": float(v[0]), "z2": float(v[1]), "z3": float(v[2]), "width": w,
            }
            for i, (n, parity, v, w) in enumerate(zip(self.parameters, self.parities, self.values, self.widths))
        ]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "odd_limit": [float(v) for v in self.odd_limit],
            "even_limit": [float(v) for v in self.even_limit],
            "oscillation": float(self.oscillation),
            "per_n": self.per_n(),
        }


def lsc_probe(
    x: ArrayLike,
    seq: SequenceSpec,
    triple: AdmissibleTriple,
    cfg: SolverConfig = DEFAULT_CONFIG,
    solver: Optional[ParallelSolver] = None,
) -> LscReport:
    """
    Distances from the endpoints of R(x) to the perturbed sets R(y⁽ⁿ⁾).

    The witness is the endpoint whose tail-half minimum distance (the liminf
    estimate) is largest; that minimum is the gap.
    """
    x = as_point3(x)
    base = optimal_set(x, triple, cfg)
    solver = solver or ParallelSolver(triple, cfg)
    return _lsc_report(x, base, seq, triple, solver.solve_all(list(seq.terms())))


async def lsc_probe_async(
    x: ArrayLike,
    seq: SequenceSpec,
    triple: AdmissibleTriple,
    cfg: SolverConfig = DEFAULT_CONFIG,
    solver: Optional[ParallelSolver] = None,
) -> LscReport:
    """`lsc_probe` for callers already inside an event loop."""
    x = as_point3(x)
    base = await asyncio.to_thread(optimal_set, x, triple, cfg)
    solver = solver or ParallelSolver(triple, cfg)
    return _lsc_report(x, base, seq, triple, await solver.optimal_sets(list(seq.terms())))


def _lsc_report(
    x: np.ndarray, base: OptimalSet, seq: SequenceSpec, triple: AdmissibleTriple, perturbed: List[OptimalSet]
) -> LscReport:
    distances = np.array([
        point_segment_distance(base.endpoints, s.endpoints[0], s.endpoints[1]) for s in perturbed
    ])  # shape (n_max, 2): one column per endpoint of R(x)
    tail = distances[_tail_start(len(perturbed)):]
    liminf = tail.min(axis=0)
    best = int(np.argmax(liminf))

    report = LscReport(
        x=x,
        witness=base.endpoints[best],
        gap=float(liminf[best]),
        distances=[float(d) for d in distances[:, best]],
        parameters=seq.parameters(),
        base=base.to_dict(),
        widths=[float(s.width) for s in perturbed],
    )
    logger.info(f"[PROBE] lsc gap {report.gap:.6f} over {seq.n_max} terms ({seq.kind}, {triple.name})")
    return report


def _cluster_point(values: np.ndarray) -> np.ndarray:
    """Mean of the last quarter of a subsequence (at least one term)."""
    count = max(1, len(values) // 4)
    return values[-count:].mean(axis=0)


def selection_oscillation(
    seq: SequenceSpec,
    triple: AdmissibleTriple,
    cfg: SolverConfig = DEFAULT_CONFIG,
    solver: Optional[ParallelSolver] = None,
    singleton_width: float = SINGLETON_WIDTH,
) -> SelectionReport:
    """
    Distance between the cluster points of the odd and even terms of the
    forced selection z⁽ⁿ⁾ ∈ R(y⁽ⁿ⁾).
    """
    solver = solver or ParallelSolver(triple, cfg)
    return _selection_report(seq, triple, solver.solve_all(list(seq.terms())), singleton_width)


async def selection_oscillation_async(
    seq: SequenceSpec,
    triple: AdmissibleTriple,
    cfg: SolverConfig = DEFAULT_CONFIG,
    solver: Optional[ParallelSolver] = None,
    singleton_width: float = SINGLETON_WIDTH,
) -> SelectionReport:
    """`selection_oscillation` for callers already inside an event loop."""
    solver = solver or ParallelSolver(triple, cfg)
    return _selection_report(seq, triple, await solver.optimal_sets(list(seq.terms())), singleton_width)


def _selection_report(
    seq: SequenceSpec, triple: AdmissibleTriple, sets: List[OptimalSet], singleton_width: float
) -> SelectionReport:
    for index, s in enumerate(sets, start=1):
        if s.width > singleton_width:
            raise NonSingletonError(index, s.width)

    values = np.array([s.center for s in sets])
    odd = values[0::2]
    even = values[1::2] if len(values) > 1 else values[0::2]
    odd_limit, even_limit = _cluster_point(odd), _cluster_point(even)
    report = SelectionReport(
        odd_limit=odd_limit,
        even_limit=even_limit,
        oscillation=float(np.linalg.norm(odd_limit - even_limit)),
        values=values,
        parameters=seq.parameters(),
        parities=seq.parities(),
        widths=[float(s.width) for s in sets],
    )
    logger.info(f"[PROBE] selection oscillation {report.oscillation:.6f} over {seq.n_max} terms ({triple.name})")
    return report
