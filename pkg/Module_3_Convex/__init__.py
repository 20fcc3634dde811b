"""
Module_3_Convex

Prox calculus for VariPro: closed-form proxes and projections, the Moreau
identity, the Moreau-Yosida envelope and mixed-norm functionals on vector
fields.
"""

from .projections import soft_threshold, clamp_box, project_linf_ball, project_ball
from .moreau import (ProxFunctional, conjugate_pairs, moreau_residual, moreau_yosida_grad,
                     moreau_envelope_value)
from .norms import (mixed_norm, project_dual_ball, group_norm_functional, zero_functional,
                    block_functional, TV_KINDS)

__all__ = [
    'soft_threshold', 'clamp_box', 'project_linf_ball', 'project_ball',
    'ProxFunctional', 'conjugate_pairs', 'moreau_residual', 'moreau_yosida_grad',
    'moreau_envelope_value',
    'mixed_norm', 'project_dual_ball', 'group_norm_functional', 'zero_functional',
    'block_functional', 'TV_KINDS',
]
