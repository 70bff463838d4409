"""
Verification report: JSON file and a plain-text summary table.

Timings are left out so that two runs with one seed give identical files.
"""

from pathlib import Path
from typing import Any, Dict, List, Sequence, Union

from ..diagnostics.export import format_float, write_json
from .claims import STATUS_FAIL
from .runner import ClaimResult


def report_dict(results: Sequence[ClaimResult], seed: int) -> Dict[str, Any]:
    failed = [r.claim_id for r in results if r.status == STATUS_FAIL]
    return {
        "seed": seed,
        "claims": [r.to_dict() for r in results],
        "total": len(results),
        "failed": failed,
        "passed": not failed,
    }


def write_report(results: Sequence[ClaimResult], seed: int, path: Union[str, Path]) -> Path:
    return write_json(report_dict(results, seed), path)


def summary_lines(results: Sequence[ClaimResult]) -> List[str]:
    width = max((len(r.claim_id) for r in results), default=8)
    lines = [f"{'claim':<{width}}  status  worst_violation  tolerance  samples"]
    for r in results:
        lines.append(
            f"{r.claim_id:<{width}}  {r.status:<6}  {format_float(r.worst_violation):>15}  "
            f"{format_float(r.tolerance):>9}  {r.samples:>7}"
        )
        if r.error:
            lines.append(f"{'':<{width}}  error: {r.error}")
    failed = sum(1 for r in results if r.status == STATUS_FAIL)
    lines.append(f"{len(results) - failed}/{len(results)} claims passed")
    return lines
