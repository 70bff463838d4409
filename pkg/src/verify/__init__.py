"""
Verify - seeded certification of every identity and inequality of the two models
"""

from .claims import (
    CLAIMS, Claim, ClaimOutcome, claims_by_id, get_claim, boundary_patches,
    STATUS_PASS, STATUS_FAIL, STATUS_INFO,
)
from .runner import ClaimResult, run_claim, run_all, all_passed
from .report import report_dict, write_report, summary_lines

__all__ = [
    'CLAIMS',
    'Claim',
    'ClaimOutcome',
    'claims_by_id',
    'get_claim',
    'boundary_patches',
    'STATUS_PASS',
    'STATUS_FAIL',
    'STATUS_INFO',
    'ClaimResult',
    'run_claim',
    'run_all',
    'all_passed',
    'report_dict',
    'write_report',
    'summary_lines',
]
