"""
Claim registry, seeded runner and verification reports.
"""

import json
import math

import pytest

from src.diagnostics import to_json
from src.verify import (
    CLAIMS, STATUS_FAIL, STATUS_INFO, STATUS_PASS, Claim, ClaimOutcome, all_passed,
    boundary_patches, get_claim, report_dict, run_all, run_claim, summary_lines, write_report,
)
from src.geometry import basic_profile, twisted_profile

REQUIRED = [
    "rotation_orthogonality", "rotation_factorisation", "basic_convexity", "basic_epigraph_identity",
    "basic_monotonicity", "basic_gradient_bound", "cone_inclusion", "cone_radius_admissible",
    "rho_zero_basic", "rho_zero_twisted", "sandwich_basic", "sandwich_twisted", "oracle_equivalence",
    "no_arbitrage", "crouzeix_concavity", "nonvanishing_d3F", "tilted_gradient_bound_1",
    "tilted_gradient_bound_2", "twisted_convexity", "half_ellipse_containment", "seam_smoothness",
    "twisted_monotonicity", "lsc_failure", "selection_failure", "param_r_gt_max", "param_8_gt_9aa",
]

CHEAP = [
    "rotation_orthogonality", "rotation_factorisation", "basic_convexity", "basic_epigraph_identity",
    "cone_inclusion", "cone_radius_admissible", "rho_zero_basic", "rho_zero_twisted", "no_arbitrage",
    "crouzeix_concavity", "nonvanishing_d3F", "half_ellipse_containment", "seam_smoothness",
    "param_r_gt_max", "param_8_gt_9aa",
]


class TestRegistry:

    def test_required_claims_registered(self):
        ids = [c.claim_id for c in CLAIMS]
        assert len(ids) == len(set(ids))
        assert set(REQUIRED) <= set(ids)
        assert ids[0] == "rotation_orthogonality"

    def test_informational_claims(self):
        informational = {c.claim_id for c in CLAIMS if c.informational}
        assert informational == {"crouzeix_concavity_boundary", "tilted_gradient_bound_1_literal"}

    def test_lookup(self):
        assert get_claim("no_arbitrage").tolerance == 0.0
        assert get_claim("oracle_equivalence").tolerance == 2e-3
        assert get_claim("missing") is None

    def test_boundary_patches(self):
        assert [p.name for p in boundary_patches(twisted_profile())] == ["E1", "E3"]
        assert boundary_patches(basic_profile()) == []


class TestRunner:

    def test_cheap_claims_pass(self):
        results = run_all(seed=0, only=CHEAP)
        assert [r.claim_id for r in results] == [c.claim_id for c in CLAIMS if c.claim_id in CHEAP]
        assert all(r.status == STATUS_PASS for r in results), summary_lines(results)
        assert all_passed(results)

    def test_literal_tilted_bound_is_reported_not_gated(self):
        (result,) = run_all(seed=0, only=["tilted_gradient_bound_1_literal"])
        assert result.status == STATUS_INFO
        assert result.worst_violation > 0.0
        assert result.passed

    def test_corrected_tilted_bound_passes(self):
        (result,) = run_all(seed=0, only=["tilted_gradient_bound_1"])
        assert result.status == STATUS_PASS

    def test_raising_check_becomes_failure(self):
        boom = Claim("boom", "always raises", 0.0, lambda rng: ClaimOutcome(1 / 0, 1))
        result = run_claim(boom, seed=0, index=99)
        assert result.status == STATUS_FAIL
        assert math.isinf(result.worst_violation)
        assert result.error.startswith("ZeroDivisionError")
        assert result.to_dict()["worst_violation"] == "inf"
        assert not all_passed([result])

    def test_violation_above_tolerance_fails(self):
        loose = Claim("loose", "always off by one", 0.5, lambda rng: ClaimOutcome(1.0, 3))
        assert run_claim(loose, seed=0, index=0).status == STATUS_FAIL
        info = Claim("note", "reported only", 0.5, lambda rng: ClaimOutcome(1.0, 3), informational=True)
        assert run_claim(info, seed=0, index=0).status == STATUS_INFO

    def test_seeded_generator_is_reproducible(self):
        draw = Claim("draw", "one uniform draw", 1.0, lambda rng: ClaimOutcome(float(rng.uniform()), 1))
        first = run_claim(draw, seed=7, index=3).worst_violation
        assert run_claim(draw, seed=7, index=3).worst_violation == first
        assert run_claim(draw, seed=8, index=3).worst_violation != first

    def test_unknown_claim(self):
        with pytest.raises(ValueError):
            run_all(only=["does_not_exist"])


class TestReport:

    def test_report_is_deterministic(self, tmp_path):
        only = ["rotation_orthogonality", "param_8_gt_9aa", "no_arbitrage"]
        first = write_report(run_all(seed=3, only=only), 3, tmp_path / "a.json")
        second = write_report(run_all(seed=3, only=only), 3, tmp_path / "b.json")
        assert first.read_bytes() == second.read_bytes()
        data = json.loads(first.read_text(encoding="utf-8"))
        assert data["seed"] == 3 and data["total"] == 3 and data["passed"] is True

    def test_report_lists_failures(self):
        failing = run_claim(Claim("off", "off", 0.0, lambda rng: ClaimOutcome(2.0, 1)), seed=0, index=0)
        data = report_dict([failing], seed=0)
        assert data["failed"] == ["off"] and data["passed"] is False
        assert json.loads(to_json(data))["claims"][0]["status"] == STATUS_FAIL

    def test_summary_footer(self):
        results = run_all(seed=0, only=["cone_radius_admissible", "param_r_gt_max"])
        lines = summary_lines(results)
        assert lines[0].startswith("claim")
        assert lines[-1] == "2/2 claims passed"


@pytest.mark.slow
def test_full_certification_passes():
    results = run_all(seed=0)
    assert all_passed(results), "\n".join(summary_lines(results))
    assert {r.claim_id for r in results} >= set(REQUIRED)
    samples = {r.claim_id: r.samples for r in results}
    assert samples["sandwich_basic"] == samples["sandwich_twisted"] == 1000
    assert samples["oracle_equivalence"] == 400
