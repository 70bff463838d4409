"""
Parallel Solver - evaluates many positions concurrently
"""

import asyncio
from typing import Any, Callable, List, Optional, Sequence

import numpy as np
from loguru import logger

from ..model.triple import AdmissibleTriple
from .config import DEFAULT_CONFIG, SolverConfig
from .rho import optimal_set, rho


class ParallelSolver:
    """
    Runs independent solves on worker threads and gathers them.
    Results come back in input order whatever the completion order.
    """

    def __init__(self, triple: AdmissibleTriple, cfg: SolverConfig = DEFAULT_CONFIG, max_concurrency: int = 8):
        self.triple = triple
        self.cfg = cfg
        self.max_concurrency = max_concurrency

    async def _run_one(self, index: int, fn: Callable[..., Any], x: np.ndarray, semaphore: asyncio.Semaphore):
        async with semaphore:
            return index, await asyncio.to_thread(fn, x, self.triple, self.cfg)

    async def map(self, fn: Callable[..., Any], points: Sequence[np.ndarray]) -> List[Any]:
        """
        Apply fn(x, triple, cfg) to every point.

        A failing point re-raises its exception after every other task has
        finished, so partial work is never silently dropped.
        """
        semaphore = asyncio.Semaphore(self.max_concurrency)
        tasks = [
            asyncio.create_task(self._run_one(i, fn, np.asarray(x, dtype=float), semaphore))
            for i, x in enumerate(points)
        ]
        logger.debug(f"[BATCH] Solving {len(tasks)} points on {self.triple.name}")
        gathered = await asyncio.gather(*tasks, return_exceptions=True)

        results: List[Optional[Any]] = [None] * len(tasks)
        first_error: Optional[BaseException] = None
        for i, item in enumerate(gathered):
            if isinstance(item, BaseException):
                logger.error(f"[BATCH] Point {i} failed: {item}")
                first_error = first_error or item
                continue
            index, value = item
            results[index] = value

        if first_error is not None:
            raise first_error
        return results

    async def optimal_sets(self, points: Sequence[np.ndarray]) -> list:
        return await self.map(optimal_set, points)

    async def rhos(self, points: Sequence[np.ndarray]) -> List[float]:
        return await self.map(rho, points)

    def solve_all(self, points: Sequence[np.ndarray]) -> list:
        """
        Blocking `optimal_sets` for synchronous callers. Starts its own event
        loop, so it raises RuntimeError inside a running one; await
        `optimal_sets` there instead.
        """
        return asyncio.run(self.optimal_sets(points))

    def rho_all(self, points: Sequence[np.ndarray]) -> List[float]:
        """Blocking `rhos`; same event-loop restriction as `solve_all`."""
        return asyncio.run(self.rhos(points))
