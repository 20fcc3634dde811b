"""
Module_2_Operators

Forward operators A with matched adjoints: identity, mask, periodic blur,
subsampled Fourier, parallel-beam Radon, discrete gradient and block stacks,
plus spectrum probes.
"""

from .linear_map import (LinearMap, IdentityMap, MaskMap, GradientMap, StackedMap,
                         make_identity, make_mask, make_gradient, stack_maps,
                         estimate_operator_norm, adjointness_residual, zero_fill)
from .blur import BlurMap, make_blur, gaussian_kernel, naive_inverse
from .fourier_sampling import SubsampledFourierMap, make_subsampled_fourier, radial_lines_mask, random_mask
from .radon import RadonMap, Sinogram, make_radon, sparse_angles, limited_angles, read_sinogram
from .spectrum import singular_spectrum_probe, smallest_eigenvalue

__all__ = [
    'LinearMap', 'IdentityMap', 'MaskMap', 'GradientMap', 'StackedMap',
    'make_identity', 'make_mask', 'make_gradient', 'stack_maps',
    'estimate_operator_norm', 'adjointness_residual', 'zero_fill',
    'BlurMap', 'make_blur', 'gaussian_kernel', 'naive_inverse',
    'SubsampledFourierMap', 'make_subsampled_fourier', 'radial_lines_mask', 'random_mask',
    'RadonMap', 'Sinogram', 'make_radon', 'sparse_angles', 'limited_angles', 'read_sinogram',
    'singular_spectrum_probe', 'smallest_eigenvalue',
]
