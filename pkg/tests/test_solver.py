"""
ρ, the optimal set R(x), acceptance membership and the brute-force oracle.
"""

import math
import sys

import numpy as np
import pytest
from pydantic import ValidationError
from scipy.optimize import minimize_scalar

from src.errors import SolverInfeasibleError
from src.geometry import SQRT3, BoatSet, rotate
from src.solver import (
    PATH_BAND, PATH_GENERAL, ParallelSolver, SolverConfig, acceptance_membership,
    acceptance_membership_batch, brute_force_oracle, cone_sum_gap, cone_sum_height,
    feasibility_violation, golden_section, lipschitz_estimate, minimize_bracketed, optimal_set,
    projected_descent, rho, rho_with_path, top_slice_reachable,
)

ONES = np.ones(3)


# ==================== One-dimensional search ====================

class TestGoldenSection:

    def test_nonsmooth_minimum_agrees_with_scipy(self):
        def f(x):
            return abs(x - 0.3) + 0.1 * x * x

        ours = golden_section(f, -2.0, 2.0, tol=1e-10)
        reference = minimize_scalar(f, bounds=(-2.0, 2.0), method="bounded", options={"xatol": 1e-10})
        assert ours["converged"]
        assert ours["argmin"] == pytest.approx(0.3, abs=1e-8)
        assert ours["argmin"] == pytest.approx(reference.x, abs=1e-6)

    def test_edge_minimum_is_reported(self):
        result = golden_section(lambda x: x, 0.0, 1.0, tol=1e-9)
        assert result["argmin"] == 0.0
        assert result["minimum"] == 0.0

    def test_bracket_expands(self):
        result = minimize_bracketed(lambda x: (x - 10.0) ** 2, -1.0, 1.0, tol=1e-9)
        assert result["argmin"] == pytest.approx(10.0, abs=1e-6)
        assert result["bracket"][0] < 10.0 < result["bracket"][1]


# ==================== Closed forms ====================

class TestClosedForms:

    def test_rho_at_origin(self, basic, twisted):
        assert rho(np.zeros(3), basic) == pytest.approx(0.0, abs=1e-9)
        assert rho(np.zeros(3), twisted) == pytest.approx(0.0, abs=1e-9)

    def test_riskless_position(self, basic):
        value, path = rho_with_path(ONES, basic)
        assert value == pytest.approx(-1.0, abs=1e-9)
        assert path == PATH_BAND

    def test_band_value(self, basic):
        value, path = rho_with_path(rotate([0.0, 2.0, 0.0]), basic)
        assert value == pytest.approx(4.0 / (9.0 * SQRT3), abs=1e-9)
        assert path == PATH_BAND

    def test_general_value(self, basic):
        value, path = rho_with_path(rotate([0.0, 4.0, 0.0]), basic)
        assert path == PATH_GENERAL
        assert value == pytest.approx((1.0 + math.sqrt(2.0)) / SQRT3, abs=1e-6)

    @pytest.mark.slow
    def test_general_face(self, basic):
        result = optimal_set(rotate([0.0, 4.0, 0.0]), basic)
        assert result.w1_interval[0] == pytest.approx(-SQRT3, abs=1e-4)
        assert result.w1_interval[1] == pytest.approx(SQRT3, abs=1e-4)

    def test_segment_at_origin(self, basic):
        result = optimal_set(np.zeros(3), basic)
        assert result.w1_interval[0] == pytest.approx(-1.0, abs=1e-6)
        assert result.w1_interval[1] == pytest.approx(1.0, abs=1e-6)
        assert np.allclose(result.endpoints[0], rotate([-1.0, 0.0, 0.0]), atol=1e-6)
        assert np.allclose(result.endpoints[1], rotate([1.0, 0.0, 0.0]), atol=1e-6)
        assert not result.is_singleton

    @pytest.mark.parametrize("n", [1, 4, 16, 64, 256])
    def test_basic_perturbations_collapse_to_zero(self, basic, n):
        result = optimal_set(rotate([0.0, 3.0 / math.sqrt(n), 1.0 / n]), basic)
        assert result.is_singleton
        assert np.linalg.norm(result.center) <= 1e-4
        assert result.rho == pytest.approx(0.0, abs=1e-9)

    @pytest.mark.parametrize("n", [1, 4, 16, 64, 256])
    @pytest.mark.parametrize("sign", [1.0, -1.0])
    def test_twisted_perturbations(self, twisted, n, sign):
        stretch = 0.5 * math.sqrt(1.0 + 256.0 / n)
        x = rotate([0.0, sign * 16.0 / math.sqrt(n), 0.0])
        result = optimal_set(x, twisted)
        assert result.is_singleton
        assert result.rho == pytest.approx(1.0 / (n * SQRT3), abs=1e-9)
        assert np.allclose(result.center, rotate([sign * stretch, 0.0, 1.0 / n]), atol=1e-4)
        contact = rotate([sign * stretch, sign * 16.0 / math.sqrt(n), 1.0 / n])
        assert np.allclose(result.contacts[0], contact, atol=1e-4)

    def test_optimal_set_serialises(self, basic):
        data = optimal_set(rotate([0.0, 2.0, 0.0]), basic).to_dict()
        assert data["singleton"] is True
        assert data["path"] == PATH_BAND
        assert len(data["endpoints"]) == 2 and len(data["contacts"]) == 2


# ==================== Structural properties ====================

class TestProperties:

    @pytest.mark.parametrize("shift", [-0.7, 0.4])
    def test_cash_additivity(self, basic, twisted, rng, shift):
        for triple in (basic, twisted):
            for x in rng.uniform(-0.5, 0.5, (5, 3)):
                assert rho(x + shift * ONES, triple) == pytest.approx(rho(x, triple) - shift, abs=1e-7)

    def test_sandwich(self, basic, twisted, rng):
        points = rng.uniform(-0.5, 0.5, (15, 3))
        for triple in (basic, twisted):
            for x in points:
                bound = float(np.max(np.abs(x)))
                assert -bound - 1e-6 <= rho(x, triple) <= bound + 1e-6

    def test_convexity(self, basic, twisted, rng):
        for triple in (basic, twisted):
            for _ in range(8):
                x, y = rng.uniform(-0.5, 0.5, (2, 3))
                assert rho(0.5 * (x + y), triple) <= 0.5 * (rho(x, triple) + rho(y, triple)) + 1e-8

    def test_monotone(self, twisted, rng):
        for x in rng.uniform(-0.5, 0.5, (5, 3)):
            assert rho(x + rng.exponential(0.2, 3), twisted) <= rho(x, twisted) + 1e-8

    def test_optimal_payoffs_are_feasible(self, basic):
        for x in (np.zeros(3), rotate([0.0, 2.0, 0.0])):
            result = optimal_set(x, basic)
            candidates = np.vstack([result.endpoints, result.interior(3)])
            for z in candidates:
                assert feasibility_violation(z, x, result.rho, basic) <= 1e-6

    def test_lipschitz_in_sup_norm(self, basic, rng):
        assert lipschitz_estimate(basic, 10, rng) <= 1.0 + 1e-6


# ==================== Membership ====================

class TestMembership:

    @pytest.mark.parametrize("method", ["auto", "descent"])
    def test_simple_points(self, basic, method):
        assert acceptance_membership(np.zeros(3), basic, method=method)
        assert acceptance_membership([0.0, 0.0, 0.5], basic, method=method)
        assert acceptance_membership([0.0, 3.0 / 2.0, 0.25], basic, method=method)
        assert not acceptance_membership([0.0, 0.0, -0.1], basic, method=method)
        assert not acceptance_membership([5.0, 0.0, 0.2], basic, method=method)

    def test_unknown_method(self, basic):
        with pytest.raises(ValueError):
            acceptance_membership(np.zeros(3), basic, method="grid")

    def test_top_slice(self, basic):
        assert top_slice_reachable([0.0, 0.0, 5.0], basic)
        assert top_slice_reachable([0.0, 3.0, 1.0], basic)
        assert not top_slice_reachable([0.0, 100.0, 1.0001], basic)

    def test_batch_matches_scalar(self, twisted, rng):
        points = np.column_stack([
            rng.uniform(-6.0, 6.0, 30), rng.uniform(-20.0, 20.0, 30), rng.uniform(-0.5, 2.0, 30),
        ])
        batch = acceptance_membership_batch(points, twisted)
        assert list(batch) == [acceptance_membership(p, twisted) for p in points]

    def test_cone_sum_height_matches_band_height(self, basic):
        assert cone_sum_height(0.0, 2.0, basic) == pytest.approx(4.0 / 9.0, abs=1e-9)

    def test_cone_sum_gap_sign(self, basic):
        assert cone_sum_gap([0.0, 0.0, 0.5], basic) <= 0.0
        assert cone_sum_gap([0.0, 0.0, -0.1], basic) > 0.0

    def test_projected_descent_on_quadratic(self):
        target = np.array([1.0, -1.0, 2.0])
        value, lam = projected_descent(lambda l: float(np.sum((l - target) ** 2)), [np.zeros(3)], 1.0, 200)
        assert value == pytest.approx(1.0, abs=1e-9)
        assert np.allclose(lam, [1.0, 0.0, 2.0], atol=1e-6)


# ==================== Oracle ====================

class TestOracle:

    def test_origin(self, basic):
        value, (lo, hi) = brute_force_oracle(np.zeros(3), basic, 1e-2)
        assert value == pytest.approx(0.0, abs=1e-9)
        assert lo == pytest.approx(-1.0, abs=2e-2)
        assert hi == pytest.approx(1.0, abs=2e-2)

    def test_closed_forms(self, basic):
        assert brute_force_oracle(ONES, basic, 1e-2)[0] == pytest.approx(-1.0, abs=1e-9)
        value, _ = brute_force_oracle(rotate([0.0, 2.0, 0.0]), basic, 1e-3)
        assert value == pytest.approx(4.0 / (9.0 * SQRT3), abs=1e-6)

    def test_rejects_bad_step(self, basic):
        with pytest.raises(ValueError):
            brute_force_oracle(np.zeros(3), basic, 0.0)

    @pytest.mark.slow
    def test_agrees_with_solver(self, basic, twisted, rng):
        for triple in (basic, twisted):
            for x in rng.uniform(-1.0, 1.0, (200, 3)):
                assert brute_force_oracle(x, triple, 1e-3)[0] == pytest.approx(rho(x, triple), abs=2e-3)

    def test_agrees_with_solver_on_a_few_points(self, basic, twisted, rng):
        for triple in (basic, twisted):
            for x in rng.uniform(-1.0, 1.0, (3, 3)):
                assert brute_force_oracle(x, triple, 1e-3)[0] == pytest.approx(rho(x, triple), abs=2e-3)

    @pytest.mark.slow
    def test_general_regime_uses_membership_only(self, basic, monkeypatch):
        def unavailable(*args, **kwargs):
            raise AssertionError("column heights must come from membership tests")

        monkeypatch.setattr(sys.modules["src.solver.rho"], "general_height", unavailable)
        monkeypatch.setattr(BoatSet, "height", unavailable)
        monkeypatch.setattr(BoatSet, "column_height", unavailable)
        value, (lo, hi) = brute_force_oracle(rotate([0.0, 4.0, 0.0]), basic, 1e-2)
        assert value == pytest.approx((1.0 + math.sqrt(2.0)) / SQRT3, abs=1e-6)
        assert lo == pytest.approx(-SQRT3, abs=5e-2)
        assert hi == pytest.approx(SQRT3, abs=5e-2)


# ==================== Configuration and errors ====================

class TestConfig:

    @pytest.mark.parametrize("overrides", [
        {"search_tol": -1.0},
        {"bracket": (1.0, 0.0)},
        {"descent_restarts": -1},
        {"unknown": 1},
    ])
    def test_invalid(self, overrides):
        with pytest.raises(ValidationError):
            SolverConfig(**overrides)

    def test_frozen(self, cfg):
        with pytest.raises(ValidationError):
            cfg.search_tol = 1.0

    def test_infeasible_within_cap(self, basic):
        cfg = SolverConfig(w3_cap=1.0, max_expansions=2)
        with pytest.raises(SolverInfeasibleError):
            rho(rotate([0.0, 4.0, 0.0]), basic, cfg)

    def test_explicit_bracket(self, basic):
        cfg = SolverConfig(bracket=(-3.0, 3.0))
        assert rho(rotate([0.0, 2.0, 0.0]), basic, cfg) == pytest.approx(4.0 / (9.0 * SQRT3), abs=1e-9)


# ==================== Parallel solves ====================

class TestParallelSolver:

    @pytest.mark.asyncio
    async def test_results_keep_input_order(self, basic):
        points = [shift * ONES for shift in (0.0, 0.5, -0.25, 1.0)]
        solver = ParallelSolver(basic, max_concurrency=2)
        values = await solver.rhos(points)
        assert values == pytest.approx([0.0, -0.5, 0.25, -1.0], abs=1e-9)

    @pytest.mark.asyncio
    async def test_failure_is_raised(self, basic):
        solver = ParallelSolver(basic)
        with pytest.raises(ValueError):
            await solver.rhos([np.zeros(3), np.array([math.nan, 0.0, 0.0])])

    def test_blocking_wrappers(self, twisted):
        solver = ParallelSolver(twisted)
        sets = solver.solve_all([np.zeros(3), ONES])
        assert [s.rho for s in sets] == pytest.approx([0.0, -1.0], abs=1e-9)
        assert solver.rho_all([ONES]) == pytest.approx([-1.0], abs=1e-9)
