"""
In-memory metrics: solver path counters, membership call counts, timings
"""

import threading
import time
from collections import defaultdict
from contextlib import contextmanager
from typing import Any, DefaultDict, Dict, Iterator, List, Optional, Tuple

import numpy as np
from loguru import logger

Labels = Optional[Dict[str, str]]
Key = Tuple[str, Tuple[Tuple[str, str], ...]]


def _key(name: str, labels: Labels) -> Key:
    return name, tuple(sorted((labels or {}).items()))


def _render(key: Key) -> str:
    name, labels = key
    if not labels:
        return name
    return name + "{" + ",".join(f"{k}={v}" for k, v in labels) + "}"


class MetricsCollector:
    """
    Counters and histograms keyed by name and labels.

    ParallelSolver runs solves on worker threads, so every update holds the lock.
    """

    def __init__(self, namespace: str = "hedgemap"):
        self.namespace = namespace
        self._counters: DefaultDict[Key, int] = defaultdict(int)
        self._histograms: DefaultDict[Key, List[float]] = defaultdict(list)
        self._lock = threading.Lock()

    def increment(self, name: str, value: int = 1, labels: Labels = None) -> None:
        with self._lock:
            self._counters[_key(name, labels)] += value

    def get_counter(self, name: str, labels: Labels = None) -> int:
        return self._counters.get(_key(name, labels), 0)

    def record(self, name: str, value: float, labels: Labels = None) -> None:
        with self._lock:
            self._histograms[_key(name, labels)].append(float(value))

    def get_histogram_stats(self, name: str, labels: Labels = None) -> Dict[str, float]:
        """count, sum, avg, min, max and p50/p95/p99 (linear interpolation)."""
        return self._stats(self._histograms.get(_key(name, labels), []))

    @staticmethod
    def _stats(values: List[float]) -> Dict[str, float]:
        if not values:
            return {"count": 0, "sum": 0.0, "avg": 0.0, "min": 0.0, "max": 0.0}
        data = np.asarray(values)
        p50, p95, p99 = np.percentile(data, [50, 95, 99])
        return {
            "count": int(data.size),
            "sum": float(data.sum()),
            "avg": float(data.mean()),
            "min": float(data.min()),
            "max": float(data.max()),
            "p50": float(p50),
            "p95": float(p95),
            "p99": float(p99),
        }

    @contextmanager
    def time_operation(self, name: str, labels: Labels = None) -> Iterator[None]:
        """
        Record `<name>_duration_ms` and bump `<name>_success` or `<name>_errors`.

            with metrics.time_operation("optimal_set", {"model": "basic"}):
                ...
        """
        start = time.perf_counter()
        try:
            yield
        except BaseException:
            self.increment(f"{name}_errors", labels=labels)
            raise
        else:
            self.increment(f"{name}_success", labels=labels)
        finally:
            self.record(f"{name}_duration_ms", (time.perf_counter() - start) * 1000.0, labels)

    def get_all_metrics(self) -> Dict[str, Any]:
        with self._lock:
            counters = dict(self._counters)
            histograms = {key: list(values) for key, values in self._histograms.items()}
        return {
            "namespace": self.namespace,
            "counters": {_render(key): value for key, value in sorted(counters.items())},
            "histograms": {_render(key): self._stats(values) for key, values in sorted(histograms.items())},
        }

    def reset(self) -> None:
        with self._lock:
            self._counters.clear()
            self._histograms.clear()
        logger.debug(f"[METRICS] reset '{self.namespace}'")


metrics = MetricsCollector()
