"""
Metrics, tracing, structured logging and process settings.
"""

import json

import numpy as np
import pytest
from pydantic import ValidationError

from src.config import Settings, load_settings
from src.observability import MetricsCollector, StructuredLogger, TracingProvider
from src.solver import optimal_set


class TestMetrics:

    def test_counters_with_labels(self):
        collector = MetricsCollector()
        collector.increment("solves", labels={"path": "band"})
        collector.increment("solves", 2, labels={"path": "band"})
        assert collector.get_counter("solves", {"path": "band"}) == 3
        assert collector.get_counter("solves", {"path": "general"}) == 0

    def test_histogram_stats(self):
        collector = MetricsCollector()
        for value in (1.0, 2.0, 3.0, 4.0):
            collector.record("claim_duration_ms", value)
        stats = collector.get_histogram_stats("claim_duration_ms")
        assert stats["count"] == 4 and stats["avg"] == 2.5
        assert stats["p50"] == pytest.approx(2.5)

    def test_time_operation_counts_errors(self):
        collector = MetricsCollector()
        with collector.time_operation("solve"):
            pass
        with pytest.raises(RuntimeError):
            with collector.time_operation("solve"):
                raise RuntimeError("boom")
        assert collector.get_counter("solve_success") == 1
        assert collector.get_counter("solve_errors") == 1
        assert collector.get_histogram_stats("solve_duration_ms")["count"] == 2

    def test_solver_records_paths(self, basic, fresh_metrics):
        optimal_set(np.zeros(3), basic)
        assert fresh_metrics.get_counter("solver_path_total", {"path": "band"}) == 1
        assert fresh_metrics.get_counter("optimal_set_success", {"model": "basic"}) == 1
        assert "histograms" in fresh_metrics.get_all_metrics()


class TestTracing:

    def test_span_ids_are_sequential(self):
        tracer = TracingProvider()
        trace_id = tracer.start_trace("verify")
        with tracer.span_context("claim:a", trace_id) as span:
            span.set_attribute("status", "pass")
        with pytest.raises(ValueError):
            with tracer.span_context("claim:b", trace_id):
                raise ValueError("bad")
        spans = tracer.get_trace(trace_id)
        assert trace_id == "t000001"
        assert [s["span_id"] for s in spans] == ["s000002", "s000003"]
        assert [s["status"] for s in spans] == ["ok", "error"]
        assert spans[0]["attributes"] == {"status": "pass"}
        assert tracer.get_trace_summary(trace_id)["span_count"] == 2

    def test_oldest_traces_are_evicted(self):
        tracer = TracingProvider(max_traces=2)
        first, second, third = (tracer.start_trace(f"verify:{i}") for i in range(3))
        assert list(tracer.traces) == [second, third]
        assert tracer.get_trace_summary(first)["status"] == "not_found"
        with tracer.span_context("claim:late", first):
            pass
        assert first not in tracer.traces
        assert tracer.get_trace(first) == []

    def test_max_traces_must_be_positive(self):
        with pytest.raises(ValueError):
            TracingProvider(max_traces=0)


class TestStructuredLogger:

    def test_event_payload_is_json(self, log_messages):
        structured = StructuredLogger()
        structured.set_context(model="twisted")
        structured.event("claim_finished", claim_id="lsc_failure", status="pass")
        structured.metric("worst_violation", 0.0, claim_id="lsc_failure")
        payloads = [json.loads(m) for m in log_messages if m.startswith("{")]
        assert payloads[0]["event_name"] == "claim_finished"
        assert payloads[0]["model"] == "twisted"
        assert "timestamp" not in payloads[0]
        assert payloads[1]["metric_value"] == 0.0

    def test_context_persists_across_records(self, log_messages):
        structured = StructuredLogger()
        structured.set_context(seed=3)
        structured.info("first")
        structured.set_context(model="basic")
        structured.info("second")
        payloads = [json.loads(m) for m in log_messages if m.startswith("{")]
        assert [p["seed"] for p in payloads] == [3, 3]
        assert payloads[1]["model"] == "basic"
        assert not hasattr(structured, "clear_context")

    def test_error_carries_exception(self, log_messages):
        StructuredLogger().error("claim raised", error=ZeroDivisionError("division by zero"))
        payload = json.loads(next(m for m in log_messages if m.startswith("{")))
        assert payload["error_type"] == "ZeroDivisionError"


class TestSettings:

    def test_defaults(self, monkeypatch):
        for name in ("HEDGEMAP_SEED", "HEDGEMAP_LOG_LEVEL", "HEDGEMAP_LOG_FILE", "HEDGEMAP_JSON_LOGS"):
            monkeypatch.delenv(name, raising=False)
        settings = load_settings()
        assert settings.seed == 0 and settings.log_level == "INFO"
        assert settings.log_file is None and settings.json_logs is False

    def test_environment(self, monkeypatch):
        monkeypatch.setenv("HEDGEMAP_SEED", "11")
        monkeypatch.setenv("HEDGEMAP_LOG_LEVEL", "debug")
        monkeypatch.setenv("HEDGEMAP_JSON_LOGS", "true")
        settings = load_settings()
        assert settings.seed == 11 and settings.log_level == "DEBUG" and settings.json_logs

    @pytest.mark.parametrize("kwargs", [{"seed": -1}, {"log_level": "LOUD"}])
    def test_invalid(self, kwargs):
        with pytest.raises(ValidationError):
            Settings(**kwargs)
