"""
Module_7B_DeepEquilibrium

Unrolled schemes with fixed Lipschitz maps and equilibrium (fixed-point)
reconstruction with a contraction certificate and Anderson acceleration.
"""

from .lipschitz_map import (LipschitzMap, certify_lipschitz, zero_map, linear_filter_map, scaled_identity_map,
                            clamped_affine_map)
from .unrolled import UpdateMap, UPDATE_FORMS, run_unrolled
from .equilibrium import DeqOperator, DeqSolver, deq_solve, anderson_accelerate, NON_CONTRACTIVE_WINDOW

__all__ = [
    'LipschitzMap', 'certify_lipschitz', 'zero_map', 'linear_filter_map', 'scaled_identity_map',
    'clamped_affine_map',
    'UpdateMap', 'UPDATE_FORMS', 'run_unrolled',
    'DeqOperator', 'DeqSolver', 'deq_solve', 'anderson_accelerate', 'NON_CONTRACTIVE_WINDOW',
]
