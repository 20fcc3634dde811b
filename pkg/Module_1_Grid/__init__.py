"""
Module_1_Grid

Dense-grid containers, discrete differential operators, the unitary DFT,
deterministic noise and image file I/O for VariPro.
"""

from .grid_types import GridImage, ComplexGrid, VectorField, as_array, check_same_shape, inner, norm
from .differential import gradient, divergence, laplacian, gradient_magnitude
from .fourier import dft2, idft2, frequency_grid
from .noise import NoiseSpec, SplitMix64, add_noise
from .image_io import read_pgm, write_pgm, read_csv_image, write_csv_image, read_image

__all__ = [
    'GridImage', 'ComplexGrid', 'VectorField', 'as_array', 'check_same_shape', 'inner', 'norm',
    'gradient', 'divergence', 'laplacian', 'gradient_magnitude',
    'dft2', 'idft2', 'frequency_grid',
    'NoiseSpec', 'SplitMix64', 'add_noise',
    'read_pgm', 'write_pgm', 'read_csv_image', 'write_csv_image', 'read_image',
]
