"""
Module_4_Fidelity

Data-fidelity terms for Gaussian, Poisson and impulse noise.
"""

from .fidelity import (Fidelity, DataTerm, fid_value, fid_gradient, fid_prox, fid_conjugate,
                       fid_conjugate_prox, fidelity_for_noise, fidelity_functional, FIDELITY_KINDS)

__all__ = [
    'Fidelity', 'DataTerm', 'fid_value', 'fid_gradient', 'fid_prox', 'fid_conjugate',
    'fid_conjugate_prox', 'fidelity_for_noise', 'fidelity_functional', 'FIDELITY_KINDS',
]
