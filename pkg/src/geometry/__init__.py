"""
Geometry - boat bodies, profiles, cones, boundary and support functions
"""

from .rotation import (
    PHI, SQRT2, SQRT3, SQRT6, Rotation, CANONICAL_ROTATION,
    as_point3, rotate, rotate_inv, rotation_from_axes,
)
from .profiles import EllipsePatch, BoatProfile, basic_profile, twisted_profile, half_ellipses
from .boat import (
    MEMBERSHIP_SLACK, BoatSet, IceCreamCone, cone_membership, basic_boat, twisted_boat,
    basic_cone_radius, twisted_cone_radius, slice_axes, slice_outline,
)
from .functions import (
    f_basic, basic_membership, ellipsoid_membership_basic, grad_f_basic, basic_gradient_bound,
    patch_F, grad_patch_F, patch_gradient, patch_f_implicit, grad_patch_f,
    implicit_gradient, tilted_bound_literal, tilted_bound_corrected, tilted_bound_two,
    ParameterConditions, tilted_parameter_conditions,
)
from .support import support_sigma, support_sigma_axis, support_sigma_sampled, concavity_defect
from .sampling import (
    sample_profile, sample_body, sample_arc, sample_boundary, sample_cone, sample_orthant, lift,
)

__all__ = [
    'PHI', 'SQRT2', 'SQRT3', 'SQRT6', 'Rotation', 'CANONICAL_ROTATION',
    'as_point3', 'rotate', 'rotate_inv', 'rotation_from_axes',
    'EllipsePatch', 'BoatProfile', 'basic_profile', 'twisted_profile', 'half_ellipses',
    'MEMBERSHIP_SLACK', 'BoatSet', 'IceCreamCone', 'cone_membership', 'basic_boat', 'twisted_boat',
    'basic_cone_radius', 'twisted_cone_radius', 'slice_axes', 'slice_outline',
    'f_basic', 'basic_membership', 'ellipsoid_membership_basic', 'grad_f_basic',
    'basic_gradient_bound', 'patch_F', 'grad_patch_F', 'patch_gradient', 'patch_f_implicit',
    'grad_patch_f', 'implicit_gradient', 'tilted_bound_literal',
    'tilted_bound_corrected', 'tilted_bound_two', 'ParameterConditions',
    'tilted_parameter_conditions',
    'support_sigma', 'support_sigma_axis', 'support_sigma_sampled', 'concavity_defect',
    'sample_profile', 'sample_body', 'sample_arc', 'sample_boundary', 'sample_cone',
    'sample_orthant', 'lift',
]
