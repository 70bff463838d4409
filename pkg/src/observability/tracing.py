"""
Tracing - one trace per certification run, one span per claim
"""

import itertools
import threading
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional

from loguru import logger


@dataclass
class Span:
    name: str
    trace_id: str
    span_id: str
    parent_id: Optional[str] = None
    status: str = "running"
    error: Optional[str] = None
    attributes: Dict[str, Any] = field(default_factory=dict)
    started: float = field(default_factory=time.perf_counter)
    finished: Optional[float] = None

    def set_attribute(self, key: str, value: Any) -> None:
        self.attributes[key] = value

    @property
    def duration_ms(self) -> float:
        return ((self.finished or time.perf_counter()) - self.started) * 1000.0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "span_id": self.span_id,
            "trace_id": self.trace_id,
            "parent_id": self.parent_id,
            "name": self.name,
            "status": self.status,
            "error": self.error,
            "duration_ms": round(self.duration_ms, 2),
            "attributes": dict(self.attributes),
        }


class TracingProvider:
    """
    In-process tracer. Trace and span ids share one counter ("t000001",
    "s000002", ...), so a rerun with the same claims yields the same ids.
    Only the newest `max_traces` traces are kept.
    """

    def __init__(self, service_name: str = "hedgemap", max_traces: int = 64):
        if max_traces < 1:
            raise ValueError(f"max_traces must be at least 1, got {max_traces}")
        self.service_name = service_name
        self.max_traces = max_traces
        self.traces: Dict[str, List[Span]] = {}
        self._ids = itertools.count(1)
        self._lock = threading.Lock()

    def _next_id(self, prefix: str) -> str:
        with self._lock:
            return f"{prefix}{next(self._ids):06d}"

    def start_trace(self, name: str) -> str:
        trace_id = self._next_id("t")
        with self._lock:
            self.traces[trace_id] = []
            while len(self.traces) > self.max_traces:
                evicted = next(iter(self.traces))
                del self.traces[evicted]
                logger.debug(f"[TRACE] {evicted} evicted")
        logger.debug(f"[TRACE] {trace_id} started ({name})")
        return trace_id

    @contextmanager
    def span_context(self, name: str, trace_id: str, parent_id: Optional[str] = None) -> Iterator[Span]:
        """
            with tracer.span_context("claim:rho_zero_basic", trace_id) as span:
                span.set_attribute("status", "pass")

        An exception marks the span "error" and propagates.
        """
        span = Span(name, trace_id, self._next_id("s"), parent_id)
        with self._lock:
            # spans of an evicted or unknown trace are not retained
            if trace_id in self.traces:
                self.traces[trace_id].append(span)
        try:
            yield span
        except Exception as e:
            span.status, span.error = "error", f"{type(e).__name__}: {e}"
            raise
        else:
            span.status = "ok"
        finally:
            span.finished = time.perf_counter()
            logger.debug(f"[TRACE] {span.span_id} {span.name} {span.status} ({span.duration_ms:.2f}ms)")

    def get_trace(self, trace_id: str) -> List[Dict[str, Any]]:
        return [span.to_dict() for span in self.traces.get(trace_id, [])]

    def get_trace_summary(self, trace_id: str) -> Dict[str, Any]:
        spans = self.traces.get(trace_id)
        if not spans:
            return {"trace_id": trace_id, "status": "not_found"}

        errors = sum(1 for s in spans if s.status == "error")
        failed_claims = sum(1 for s in spans if s.attributes.get("status") == "fail")
        return {
            "trace_id": trace_id,
            "service": self.service_name,
            "span_count": len(spans),
            "total_duration_ms": round(sum(s.duration_ms for s in spans), 2),
            "error_count": errors,
            "failed_claims": failed_claims,
            "status": "error" if errors or failed_claims else "ok",
        }


tracer = TracingProvider()
