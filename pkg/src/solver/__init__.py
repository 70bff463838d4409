"""
Solver - ρ(x), the optimal set R(x), acceptance membership and the brute-force oracle
"""

from .config import SolverConfig, DEFAULT_CONFIG
from .golden import golden_section, minimize_bracketed
from .membership import (
    acceptance_membership, acceptance_membership_batch, top_slice_reachable,
    projected_descent, cone_sum_gap, cone_sum_height,
)
from .rho import (
    PATH_BAND, PATH_GENERAL, OptimalSet, general_height, rho, rho_with_path, optimal_set,
    feasibility_violation, lipschitz_estimate,
)
from .oracle import brute_force_oracle
from .batch import ParallelSolver

__all__ = [
    'SolverConfig',
    'DEFAULT_CONFIG',
    'golden_section',
    'minimize_bracketed',
    'acceptance_membership',
    'acceptance_membership_batch',
    'top_slice_reachable',
    'projected_descent',
    'cone_sum_gap',
    'cone_sum_height',
    'PATH_BAND',
    'PATH_GENERAL',
    'OptimalSet',
    'general_height',
    'rho',
    'rho_with_path',
    'optimal_set',
    'feasibility_violation',
    'lipschitz_estimate',
    'brute_force_oracle',
    'ParallelSolver',
]
