"""
Golden-section search for convex (not necessarily smooth) functions of one variable.
"""

import math
from typing import Any, Callable, Dict

from loguru import logger

INV_PHI = 2.0 / (1.0 + math.sqrt(5.0))


def golden_section(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-10,
    max_iterations: int = 200,
) -> Dict[str, Any]:
    """
    Minimize a unimodal f on [lo, hi].

    Returns a dict with argmin, minimum, lo/hi (the final bracket),
    iterations and converged. The bracket ends are evaluated too, so a
    minimum sitting on an edge is reported there.
    """
    x1 = hi - INV_PHI * (hi - lo)
    x2 = lo + INV_PHI * (hi - lo)
    f1 = f(x1)
    f2 = f(x2)
    f_lo0, f_hi0 = f(lo), f(hi)
    lo0, hi0 = lo, hi

    iteration = 0
    while iteration < max_iterations and hi - lo > tol:
        if f2 > f1:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - INV_PHI * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + INV_PHI * (hi - lo)
            f2 = f(x2)
        iteration += 1

    mid = 0.5 * (lo + hi)
    candidates = [(f(mid), mid), (f1, x1), (f2, x2), (f_lo0, lo0), (f_hi0, hi0)]
    minimum, argmin = min(candidates, key=lambda item: item[0])

    converged = iteration < max_iterations and not (math.isnan(f1) or math.isnan(f2))
    if not converged:
        logger.debug(f"[SOLVER] golden section stopped after {iteration} iterations, bracket {hi - lo:.3e}")

    return {
        "argmin": argmin,
        "minimum": minimum,
        "lo": lo,
        "hi": hi,
        "iterations": iteration,
        "converged": converged,
    }


def minimize_bracketed(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float,
    max_expansions: int = 20,
    max_iterations: int = 200,
) -> Dict[str, Any]:
    """
    `golden_section` that doubles the bracket about its center while the
    minimizer lands on an edge.
    """
    result = golden_section(f, lo, hi, tol, max_iterations)
    for _ in range(max_expansions):
        edge = max(tol, 1e-9 * (hi - lo))
        if lo + edge < result["argmin"] < hi - edge:
            break
        center, half = 0.5 * (lo + hi), hi - lo
        lo, hi = center - half, center + half
        logger.debug(f"[SOLVER] minimizer on bracket edge, expanding to [{lo:.6g}, {hi:.6g}]")
        result = golden_section(f, lo, hi, tol, max_iterations)
    result["bracket"] = (lo, hi)
    return result
