"""
Unitary 2-D Discrete Fourier Transform

Both directions carry the 1/sqrt(width*height) factor so the transform is an
isometry and masked-Fourier operators are nonexpansive.
"""

import numpy as np
from scipy import fft

from .grid_types import as_array


def dft2(u):
    """Unitary forward DFT of a real or complex grid"""
    return fft.fft2(as_array(u), norm="ortho")


def idft2(c):
    """Unitary inverse DFT; idft2(dft2(u)) == u up to rounding"""
    return fft.ifft2(as_array(c), norm="ortho")


def frequency_grid(shape):
    """Angular frequencies (wy, wx) in radians per pixel, DFT ordering"""
    wy = 2.0 * np.pi * fft.fftfreq(shape[0])
    wx = 2.0 * np.pi * fft.fftfreq(shape[1])
    return np.meshgrid(wy, wx, indexing="ij")
