"""
Certification runner - executes every registered claim once with a seeded
generator and records pass/fail/info results.
"""

import math
import time
from dataclasses import asdict, dataclass
from typing import Any, Dict, Iterable, List, Optional

import numpy as np
from loguru import logger

from ..observability.logging_config import structured_logger
from ..observability.metrics import metrics
from ..observability.tracing import tracer
from .claims import CLAIMS, STATUS_FAIL, STATUS_INFO, STATUS_PASS, Claim


@dataclass(frozen=True)
class ClaimResult:
    claim_id: str
    anchor: str
    status: str
    worst_violation: float
    tolerance: float
    samples: int
    seed: int
    notes: str = ""
    error: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.status != STATUS_FAIL

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        if not math.isfinite(self.worst_violation):
            data["worst_violation"] = "inf"
        return data


def _status(claim: Claim, worst: float) -> str:
    if claim.informational:
        return STATUS_INFO
    return STATUS_PASS if worst <= claim.tolerance else STATUS_FAIL


def run_claim(claim: Claim, seed: int, index: int, trace_id: Optional[str] = None) -> ClaimResult:
    """
    Run one claim with the generator seeded by (seed, index). Exceptions are
    recorded as a failed claim with an infinite violation.
    """
    rng = np.random.default_rng([seed, index])
    start = time.perf_counter()
    trace_id = trace_id or tracer.start_trace(f"claim:{claim.claim_id}")

    with tracer.span_context(f"claim:{claim.claim_id}", trace_id) as span:
        try:
            outcome = claim.check(rng)
            result = ClaimResult(
                claim_id=claim.claim_id,
                anchor=claim.anchor,
                status=_status(claim, outcome.worst_violation),
                worst_violation=float(outcome.worst_violation),
                tolerance=claim.tolerance,
                samples=int(outcome.samples),
                seed=seed,
                notes=outcome.notes,
            )
        except Exception as e:
            logger.error(f"[VERIFY] {claim.claim_id} raised {type(e).__name__}: {e}")
            structured_logger.error("claim raised", error=e, claim_id=claim.claim_id)
            result = ClaimResult(
                claim_id=claim.claim_id,
                anchor=claim.anchor,
                status=STATUS_FAIL,
                worst_violation=math.inf,
                tolerance=claim.tolerance,
                samples=0,
                seed=seed,
                error=f"{type(e).__name__}: {e}",
            )

        span.set_attribute("claim_id", result.claim_id)
        span.set_attribute("status", result.status)
        span.set_attribute("worst_violation", result.worst_violation)

    elapsed_ms = (time.perf_counter() - start) * 1000
    metrics.record("claim_duration_ms", elapsed_ms, {"claim": claim.claim_id})
    if result.status == STATUS_FAIL:
        metrics.increment("claims_failed_total", labels={"claim": claim.claim_id})

    structured_logger.event("claim_finished", claim_id=result.claim_id, status=result.status)
    structured_logger.metric("worst_violation", result.worst_violation, claim_id=result.claim_id)
    logger.info(
        f"[VERIFY] {result.status.upper():<4} {result.claim_id} "
        f"(worst {result.worst_violation:.3e}, tol {result.tolerance:.1e}, {elapsed_ms:.0f}ms)"
    )
    return result


def run_all(seed: int = 0, only: Optional[Iterable[str]] = None) -> List[ClaimResult]:
    """
    Run every registered claim (or those named in `only`) in registry order.

    A failing or raising claim never aborts the run.
    """
    selected = set(only) if only is not None else None
    unknown = (selected or set()) - {c.claim_id for c in CLAIMS}
    if unknown:
        raise ValueError(f"unknown claims: {', '.join(sorted(unknown))}")

    trace_id = tracer.start_trace("verify")
    logger.info(f"[VERIFY] running {len(selected) if selected else len(CLAIMS)} claims with seed {seed}")

    results = [
        run_claim(claim, seed, index, trace_id)
        for index, claim in enumerate(CLAIMS)
        if selected is None or claim.claim_id in selected
    ]

    summary = tracer.get_trace_summary(trace_id)
    failed = sum(1 for r in results if r.status == STATUS_FAIL)
    logger.info(f"[VERIFY] {len(results) - failed}/{len(results)} claims passed "
                f"({summary.get('total_duration_ms', 0.0):.0f}ms)")
    return results


def all_passed(results: Iterable[ClaimResult]) -> bool:
    return all(r.passed for r in results)
