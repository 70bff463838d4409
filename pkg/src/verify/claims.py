"""
Claim registry - every displayed identity and inequality of the two models
as a seeded numerical check.

A check receives a numpy Generator and returns a ClaimOutcome. Sample counts
are fixed per claim so the full run stays within a couple of minutes.
"""

import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

import numpy as np

from ..diagnostics.probes import lsc_probe, selection_oscillation
from ..diagnostics.sequences import SequenceSpec
from ..geometry.boat import IceCreamCone, basic_boat, basic_cone_radius, twisted_boat, twisted_cone_radius
from ..geometry.functions import (
    basic_gradient_bound, basic_membership, ellipsoid_membership_basic, f_basic, grad_f_basic,
    grad_patch_F, patch_gradient, tilted_bound_corrected, tilted_bound_literal, tilted_bound_two,
    tilted_parameter_conditions,
)
from ..geometry.profiles import BoatProfile, EllipsePatch, basic_profile, half_ellipses, twisted_profile
from ..geometry.rotation import PHI, SQRT2, SQRT3, CANONICAL_ROTATION, rotate, rotate_inv, rotation_from_axes
from ..geometry.sampling import lift, sample_body, sample_boundary, sample_cone, sample_orthant, sample_profile
from ..geometry.support import concavity_defect
from ..model.triple import AdmissibleTriple, basic_triple, no_arbitrage_margin, twisted_triple
from ..solver.batch import ParallelSolver
from ..solver.oracle import brute_force_oracle
from ..solver.rho import rho

STATUS_PASS = "pass"
STATUS_FAIL = "fail"
STATUS_INFO = "info"

BASIC_R = 3.0
TWISTED_R = 16.0
ORACLE_SAMPLES = 200
ORACLE_GRID_STEP = 1e-3
SANDWICH_SAMPLES = 1000


@dataclass(frozen=True)
class ClaimOutcome:
    worst_violation: float
    samples: int
    notes: str = ""


@dataclass(frozen=True)
class Claim:
    """A registered check. Informational claims never gate the run."""

    claim_id: str
    anchor: str
    tolerance: float
    check: Callable[[np.random.Generator], ClaimOutcome]
    informational: bool = False


CLAIMS: List[Claim] = []


def claim(claim_id: str, anchor: str, tolerance: float, informational: bool = False):
    """Register the decorated check under `claim_id`, in declaration order."""
    def register(check: Callable[[np.random.Generator], ClaimOutcome]):
        CLAIMS.append(Claim(claim_id, anchor, tolerance, check, informational))
        return check
    return register


def claims_by_id() -> Dict[str, Claim]:
    return {c.claim_id: c for c in CLAIMS}


def _excess(values, bound: float) -> float:
    """How far the largest value exceeds `bound` (0 when it does not)."""
    values = np.asarray(values, dtype=float)
    return max(0.0, float(np.max(values)) - bound) if values.size else 0.0


def _interior_patches(profile: BoatProfile) -> List[EllipsePatch]:
    return [p for p in profile.patches if p.interior_contains_origin]


def boundary_patches(profile: BoatProfile, tol: float = 1e-12) -> List[EllipsePatch]:
    """Patches on the equality boundary |a|√α = 1."""
    return [p for p in profile.patches if abs(abs(p.a) * math.sqrt(p.alpha) - 1.0) <= tol]


# ==================== Rotation ====================

@claim("rotation_orthogonality", "rotation matrix: orthogonal, det 1, anchor images", 1e-12)
def _rotation_orthogonality(rng: np.random.Generator) -> ClaimOutcome:
    anchors = np.array([[0.0, 0.0, SQRT3], [SQRT2, 0.0, 0.0]])
    expected = np.array([[1.0, 1.0, 1.0], [1.0, -1.0, 0.0]])
    x = rng.normal(size=(100, 3))
    worst = max(
        CANONICAL_ROTATION.orthogonality_error(),
        abs(CANONICAL_ROTATION.determinant() - 1.0),
        float(np.max(np.abs(rotate(anchors) - expected))),
        float(np.max(np.abs(rotate_inv(rotate(x)) - x))),
        float(np.max(np.abs(np.linalg.norm(rotate(x), axis=1) - np.linalg.norm(x, axis=1)))),
    )
    return ClaimOutcome(worst, 102)


@claim("rotation_factorisation", "rotation as π/4 about e3 then ϑ about (1,−1,0)/√2", 1e-12)
def _rotation_factorisation(rng: np.random.Generator) -> ClaimOutcome:
    return ClaimOutcome(float(np.max(np.abs(rotation_from_axes().matrix - PHI))), 1)


# ==================== Basic boat ====================

@claim("basic_convexity", "basic boat B_3 is convex", 1e-9)
def _basic_convexity(rng: np.random.Generator) -> ClaimOutcome:
    boat = basic_boat(BASIC_R)
    a, b = sample_body(boat, 10_000, rng), sample_body(boat, 10_000, rng)
    mid = 0.5 * (a + b)
    return ClaimOutcome(_excess(f_basic(mid[:, 0], mid[:, 1], BASIC_R) - mid[:, 2], 0.0), 10_000)


@claim("basic_epigraph_identity", "B_r equals a section of the epigraph of f_r", 0.0)
def _basic_epigraph_identity(rng: np.random.Generator) -> ClaimOutcome:
    boat = basic_boat(BASIC_R)
    box = rng.uniform([-3.5, -3.5, -0.1], [3.5, 3.5, 1.1], (10_000, 3))
    near, _ = sample_boundary(boat, 5_000, rng)
    near[:, 2] += rng.choice([-1.0, 1.0], 5_000) * rng.uniform(1e-6, 1e-3, 5_000)
    points = np.vstack([box, near])
    disagree = basic_membership(points, BASIC_R) != ellipsoid_membership_basic(points, BASIC_R)
    return ClaimOutcome(float(np.count_nonzero(disagree)), len(points))


@claim("basic_monotonicity", "B_r + K_R ∩ {x3 ≤ 1} ⊆ B_r with R = r²/(2√(1+r²))", 1e-9)
def _basic_monotonicity(rng: np.random.Generator) -> ClaimOutcome:
    boat = basic_boat(BASIC_R)
    b = sample_body(boat, 10_000, rng)
    s = b + sample_cone(basic_cone_radius(BASIC_R), 1.0 - b[:, 2], rng)
    return ClaimOutcome(_excess(f_basic(s[:, 0], s[:, 1], BASIC_R) - s[:, 2], 0.0), 10_000)


@claim("basic_gradient_bound", "‖∇f_r‖² ≤ 4(1+r²)/r⁴ on the boundary", 1e-9)
def _basic_gradient_bound(rng: np.random.Generator) -> ClaimOutcome:
    x, _ = sample_boundary(basic_boat(BASIC_R), 100_000, rng)
    d1, d2 = grad_f_basic(x[:, 0], x[:, 1], BASIC_R)
    return ClaimOutcome(_excess(d1 ** 2 + d2 ** 2, basic_gradient_bound(BASIC_R)), len(x))


# ==================== Cones ====================

@claim("cone_inclusion", "Φ⁻¹(R³₊) ⊂ K_√2", 1e-9)
def _cone_inclusion(rng: np.random.Generator) -> ClaimOutcome:
    k = rotate_inv(sample_orthant(10_000, rng))
    k = np.vstack([k, CANONICAL_ROTATION.cone_generators])
    cone = IceCreamCone(SQRT2)
    excess = np.hypot(k[:, 0], k[:, 1]) - cone.R * k[:, 2]
    return ClaimOutcome(_excess(excess, 0.0), len(k))


@claim("cone_radius_admissible", "√2 does not exceed either monotonicity radius", 0.0)
def _cone_radius_admissible(rng: np.random.Generator) -> ClaimOutcome:
    radii = [basic_cone_radius(BASIC_R), twisted_cone_radius(TWISTED_R)]
    return ClaimOutcome(_excess([SQRT2 - R for R in radii], 0.0), 2)


# ==================== Risk measure ====================

def _rho_zero(triple: AdmissibleTriple) -> ClaimOutcome:
    return ClaimOutcome(abs(rho(np.zeros(3), triple)), 1)


@claim("rho_zero_basic", "ρ(0) = 0 for the basic triple", 1e-9)
def _rho_zero_basic(rng: np.random.Generator) -> ClaimOutcome:
    return _rho_zero(basic_triple())


@claim("rho_zero_twisted", "ρ(0) = 0 for the twisted triple", 1e-9)
def _rho_zero_twisted(rng: np.random.Generator) -> ClaimOutcome:
    return _rho_zero(twisted_triple())


def _sandwich(triple: AdmissibleTriple, rng: np.random.Generator, samples: int = SANDWICH_SAMPLES) -> ClaimOutcome:
    x = rng.uniform(-0.5, 0.5, (samples, 3))
    values = np.array(ParallelSolver(triple).rho_all(list(x)))
    norms = np.max(np.abs(x), axis=1)
    excess = np.maximum(values - norms, -norms - values)
    return ClaimOutcome(_excess(excess, 0.0), samples)


@claim("sandwich_basic", "−‖x‖∞ ≤ ρ(x) ≤ ‖x‖∞, basic triple", 1e-6)
def _sandwich_basic(rng: np.random.Generator) -> ClaimOutcome:
    return _sandwich(basic_triple(), rng)


@claim("sandwich_twisted", "−‖x‖∞ ≤ ρ(x) ≤ ‖x‖∞, twisted triple", 1e-6)
def _sandwich_twisted(rng: np.random.Generator) -> ClaimOutcome:
    return _sandwich(twisted_triple(), rng)


@claim("oracle_equivalence", "solver ρ agrees with the brute-force grid oracle (step 1e-3)", 2e-3)
def _oracle_equivalence(rng: np.random.Generator) -> ClaimOutcome:
    worst = 0.0
    count = 0
    for triple in (basic_triple(), twisted_triple()):
        for x in rng.uniform(-1.0, 1.0, (ORACLE_SAMPLES, 3)):
            oracle_rho, _ = brute_force_oracle(x, triple, ORACLE_GRID_STEP)
            worst = max(worst, abs(rho(x, triple) - oracle_rho))
            count += 1
    return ClaimOutcome(worst, count)


@claim("no_arbitrage", "π > 0 on nonzero nonnegative payoffs", 0.0)
def _no_arbitrage(rng: np.random.Generator) -> ClaimOutcome:
    margin = min(no_arbitrage_margin(t, 10_000, rng) for t in (basic_triple(), twisted_triple()))
    return ClaimOutcome(0.0 if margin > 0.0 else 1.0 - margin, 20_000,
                        notes=f"min π(z)/‖z‖∞ = {margin:.6g}")


# ==================== Twisted boat ====================

@claim("crouzeix_concavity", "σ_s(t) is concave in t for every s (|a| < 1/√α)", 1e-9)
def _crouzeix_concavity(rng: np.random.Generator) -> ClaimOutcome:
    patches = _interior_patches(twisted_profile()) + list(basic_profile().patches)
    worst = 0.0
    for patch in patches:
        s = rng.normal(size=(1_000, 1, 2))
        t = rng.uniform(0.0, 1.0, (2, 1, 100))
        defect = concavity_defect(s, t[0], t[1], TWISTED_R, patch)
        worst = max(worst, _excess(defect, 0.0))
    return ClaimOutcome(worst, 100_000 * len(patches), notes=", ".join(p.name for p in patches))


@claim("crouzeix_concavity_boundary", "σ_s(t) concavity on patches with |a|√α = 1", 1e-9, informational=True)
def _crouzeix_concavity_boundary(rng: np.random.Generator) -> ClaimOutcome:
    patches = boundary_patches(twisted_profile())
    worst = 0.0
    for patch in patches:
        s = rng.normal(size=(1_000, 1, 2))
        t = rng.uniform(0.0, 1.0, (2, 1, 100))
        worst = max(worst, _excess(concavity_defect(s, t[0], t[1], TWISTED_R, patch), 0.0))
    return ClaimOutcome(worst, 100_000 * len(patches),
                        notes="equality boundary: " + ", ".join(p.name for p in patches))


@claim("nonvanishing_d3F", "∂₃F < 0 on B_r(E) for x₃ > 0 and |a| < 1/√α", 0.0)
def _nonvanishing_d3F(rng: np.random.Generator) -> ClaimOutcome:
    worst = 0.0
    patches = _interior_patches(twisted_profile())
    for patch in patches:
        body = BoatProfile(patches=(patch.full_ellipse(),), name=patch.name)
        x = lift(twisted_boat(TWISTED_R), sample_profile(body, 10_000, rng), rng.uniform(1e-6, 1.0, 10_000))
        d3 = grad_patch_F(x, TWISTED_R, patch)[:, 2]
        worst = max(worst, _excess(1e-12 - np.abs(d3), 0.0), _excess(d3, 0.0))
    return ClaimOutcome(worst, 10_000 * len(patches))


def _patch_gradient_norms(patch_names, rng: np.random.Generator, n: int = 20_000):
    boat = twisted_boat(TWISTED_R)
    names = [p.name for p in boat.profile.patches]
    indices = [names.index(name) for name in patch_names]
    x, choice = sample_boundary(boat, n, rng, patches=indices)
    norms = np.empty(n)
    for index in indices:
        rows = choice == index
        norms[rows] = np.linalg.norm(patch_gradient(x[rows], boat.r, boat.profile.patches[index]), axis=1)
    return norms


@claim("tilted_gradient_bound_1", "‖∇f‖ ≤ 2√(1+r²)/r² on E1, E3 (u − a on the far side)", 1e-9)
def _tilted_gradient_bound_1(rng: np.random.Generator) -> ClaimOutcome:
    norms = _patch_gradient_norms(("E1", "E3"), rng)
    return ClaimOutcome(_excess(norms, tilted_bound_corrected(TWISTED_R)), len(norms))


@claim("tilted_gradient_bound_1_literal", "‖∇f‖ ≤ 2/r on E1, E3", 1e-9, informational=True)
def _tilted_gradient_bound_1_literal(rng: np.random.Generator) -> ClaimOutcome:
    norms = _patch_gradient_norms(("E1", "E3"), rng)
    return ClaimOutcome(_excess(norms, tilted_bound_literal(TWISTED_R)), len(norms),
                        notes="exceeded near the u = 1 tip by the factor √(1+1/r²)")


@claim("tilted_gradient_bound_2", "‖∇f‖ ≤ 16·max{αr²/(r²+1), 1}/(r(8 − 9αa²)) on E2, E4", 1e-9)
def _tilted_gradient_bound_2(rng: np.random.Generator) -> ClaimOutcome:
    boat = twisted_boat(TWISTED_R)
    norms = _patch_gradient_norms(("E2", "E4"), rng)
    bound = min(tilted_bound_two(TWISTED_R, boat.profile.patches[i]) for i in (1, 3))
    return ClaimOutcome(_excess(norms, bound), len(norms))


@claim("twisted_convexity", "B_16(C) is convex", 1e-9)
def _twisted_convexity(rng: np.random.Generator) -> ClaimOutcome:
    boat = twisted_boat(TWISTED_R)
    a, b = sample_body(boat, 10_000, rng), sample_body(boat, 10_000, rng)
    mid = 0.5 * (a + b)
    return ClaimOutcome(_excess(boat.column_height(mid[:, 0], mid[:, 1]) - mid[:, 2], 0.0), 10_000)


@claim("half_ellipse_containment", "E′₁ ⊂ E′₂", 1e-9)
def _half_ellipse_containment(rng: np.random.Generator) -> ClaimOutcome:
    inner, outer = half_ellipses()
    uv = sample_profile(BoatProfile(patches=(inner,), name=inner.name), 10_000, rng)
    level = outer.level(uv[:, 0], uv[:, 1])
    outside_ranges = ~outer.in_ranges(uv[:, 0], uv[:, 1], 1e-12)
    return ClaimOutcome(max(_excess(level, 1.0), float(np.count_nonzero(outside_ranges))), len(uv))


@claim("seam_smoothness", "∇F agrees across the u = ±½ seams; x₂ = 0 seam factors −⅓, 0, +⅓", 1e-9)
def _seam_smoothness(rng: np.random.Generator) -> ClaimOutcome:
    E1, E2, E3, E4 = twisted_profile().patches
    r = TWISTED_R
    h = rng.uniform(1e-6, 1.0, 1_000)
    stretch = np.sqrt(1.0 + r ** 2 * h)
    v = rng.uniform(0.0, 1.0, 1_000)

    def relative(a: np.ndarray, b: np.ndarray) -> float:
        scale = np.maximum(1.0, np.max(np.abs(a), axis=-1))
        return float(np.max(np.max(np.abs(a - b), axis=-1) / scale))

    upper = np.column_stack([0.5 * stretch, v * r * np.sqrt(h), h])
    lower = np.column_stack([-0.5 * stretch, -v * r * np.sqrt(h), h])
    worst = max(
        relative(grad_patch_F(upper, r, E1), grad_patch_F(upper, r, E2)),
        relative(grad_patch_F(lower, r, E3), grad_patch_F(lower, r, E4)),
    )

    tip = np.column_stack([stretch, np.zeros_like(h), h])
    tail = np.column_stack([-stretch, np.zeros_like(h), h])
    dF1 = grad_patch_F(tip, r, E1)
    dF2 = grad_patch_F(tail, r, E2)
    factors = np.array([-1.0 / 3.0, 0.0, 1.0 / 3.0])
    worst = max(worst, relative(dF1 * factors, np.where(factors == 0.0, 0.0, dF2)),
                float(np.max(np.abs(dF1[:, 1]))), float(np.max(np.abs(dF2[:, 1]))))

    # the f-gradient itself is continuous where E1 meets E4
    g1 = patch_gradient(tip, r, E1)
    g4 = patch_gradient(tip, r, E4)
    worst = max(worst, relative(g1, g4))
    return ClaimOutcome(worst, 3 * len(h))


@claim("twisted_monotonicity", "B_r(C) + K_R ∩ {x3 ≤ 1} ⊆ B_r(C) with R = 7r/16", 1e-9)
def _twisted_monotonicity(rng: np.random.Generator) -> ClaimOutcome:
    boat = twisted_boat(TWISTED_R)
    b = sample_body(boat, 10_000, rng)
    s = b + sample_cone(twisted_cone_radius(TWISTED_R), 1.0 - b[:, 2], rng)
    return ClaimOutcome(_excess(boat.column_height(s[:, 0], s[:, 1]) - s[:, 2], 0.0), 10_000)


# ==================== Stability ====================

@claim("lsc_failure", "R is not lower semicontinuous at 0 (basic): gap ∈ [0.99, 1.01]", 0.0)
def _lsc_failure(rng: np.random.Generator) -> ClaimOutcome:
    report = lsc_probe(np.zeros(3), SequenceSpec(kind="basic_lsc", n_max=100), basic_triple())
    return ClaimOutcome(max(0.0, 0.99 - report.gap, report.gap - 1.01), 100,
                        notes=f"gap = {report.gap:.9f}")


@claim("selection_failure", "no continuous selection at 0 (twisted): oscillation ∈ [0.99, 1.01]", 0.0)
def _selection_failure(rng: np.random.Generator) -> ClaimOutcome:
    seq = SequenceSpec(kind="twisted_alternating", n_max=18, spacing="geometric")
    report = selection_oscillation(seq, twisted_triple())
    return ClaimOutcome(max(0.0, 0.99 - report.oscillation, report.oscillation - 1.01), seq.n_max,
                        notes=f"oscillation = {report.oscillation:.9f}")


# ==================== Parameters ====================

@claim("param_r_gt_max", "r = 16 > max{√2, 1/√(5−α)} and α < 5 for every patch of C", 0.0)
def _param_r_gt_max(rng: np.random.Generator) -> ClaimOutcome:
    patches = twisted_profile().patches
    conditions = [tilted_parameter_conditions(TWISTED_R, p) for p in patches]
    failures = [c for c in conditions if not (c.r_large_enough and c.alpha_below_5)]
    return ClaimOutcome(float(len(failures)), len(patches))


@claim("param_8_gt_9aa", "8 > 9αa² on E2, E4", 0.0)
def _param_8_gt_9aa(rng: np.random.Generator) -> ClaimOutcome:
    patches = [p for p in twisted_profile().patches if p.name in ("E2", "E4")]
    failures = [p for p in patches if not tilted_parameter_conditions(TWISTED_R, p).eight_exceeds_9aa]
    return ClaimOutcome(float(len(failures)), len(patches),
                        notes=", ".join(f"{p.name}: 9αa² = {9.0 * p.alpha * p.a ** 2:.6g}" for p in patches))


def get_claim(claim_id: str) -> Optional[Claim]:
    return claims_by_id().get(claim_id)
