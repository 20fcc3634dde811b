"""
Module_7A_PlugAndPlay

Linear denoisers as proximal operators, spectral filtering of their
regularization strength, PnP-ADMM / PnP-FBS and the convergent
regularization sweep.
"""

from .denoiser import (LinearDenoiser, DenseDenoiser, SpectralDenoiser, SYMBOL_FLOOR, tikhonov_denoiser,
                       gaussian_denoiser, denoiser_regularizer_value)
from .spectral_filter import SpectralFilter, apply_spectral_filter, filter_admissibility, canonical_filter_values
from .prox_check import verify_prox_characterization, prox_by_cg
from .pnp import pnp_admm, pnp_fbs
from .sweep import (ConvergenceSweep, SWEEP_COLUMNS, convergence_sweep, calibrate_linear_rule,
                    minimum_regularizer_solution, operator_matrix, noisy_data, linear_rule,
                    sweep_is_monotone)

__all__ = [
    'LinearDenoiser', 'DenseDenoiser', 'SpectralDenoiser', 'SYMBOL_FLOOR', 'tikhonov_denoiser',
    'gaussian_denoiser', 'denoiser_regularizer_value',
    'SpectralFilter', 'apply_spectral_filter', 'filter_admissibility', 'canonical_filter_values',
    'verify_prox_characterization', 'prox_by_cg',
    'pnp_admm', 'pnp_fbs',
    'ConvergenceSweep', 'SWEEP_COLUMNS', 'convergence_sweep', 'calibrate_linear_rule',
    'minimum_regularizer_solution', 'operator_matrix', 'noisy_data', 'linear_rule', 'sweep_is_monotone',
]
