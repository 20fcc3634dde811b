"""
Module_6_Regularizers

Regularization functionals for VariPro: Tikhonov, isotropic and anisotropic
TV, and the prototype-set distance, plus the TV flow.
"""

from .regularizer import (Regularizer, SubgradientResult, RegularizerProx, REGULARIZER_KINDS,
                          TV_EPSILON, reg_value, reg_subgradient, reg_prox, nearest_prototype,
                          load_prototypes)
from .tv_flow import tv_flow

__all__ = [
    'Regularizer', 'SubgradientResult', 'RegularizerProx', 'REGULARIZER_KINDS', 'TV_EPSILON',
    'reg_value', 'reg_subgradient', 'reg_prox', 'nearest_prototype', 'load_prototypes',
    'tv_flow',
]
