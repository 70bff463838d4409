"""
Observability for solver and certification runs: loguru setup, JSON-line
records, in-memory metrics and claim tracing
"""

from .logging_config import StructuredLogger, setup_logging, structured_logger
from .metrics import MetricsCollector, metrics
from .tracing import Span, TracingProvider, tracer

__all__ = [
    "setup_logging",
    "StructuredLogger",
    "structured_logger",
    "MetricsCollector",
    "metrics",
    "TracingProvider",
    "Span",
    "tracer",
]
