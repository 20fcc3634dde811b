"""
Undersampled Fourier Acquisition

A = mask * dft2 for the MRI example. Unsampled coefficients are stored as
zero; the adjoint takes the real part of idft2(mask * c) so the domain stays
real. With a unitary DFT the operator is nonexpansive.
"""

import numpy as np
from scipy import fft

from core.errors import NonBinaryMask, OperatorError
from Module_1_Grid.grid_types import as_array
from Module_1_Grid.fourier import dft2, idft2
from Module_1_Grid.noise import SplitMix64
from .linear_map import LinearMap


class SubsampledFourierMap(LinearMap):

    def __init__(self, mask):
        mask = np.asarray(as_array(mask), dtype=np.float64)
        if mask.ndim != 2 or not np.all((mask == 0) | (mask == 1)):
            raise NonBinaryMask("sampling mask entries must be 0 or 1")
        super().__init__(mask.shape, mask.shape, range_is_complex=True)
        self.mask = mask
        self._norm_estimate = 1.0 if np.any(mask == 1) else 0.0

    @property
    def sampling_rate(self):
        return float(self.mask.mean())

    def apply(self, u):
        return self.mask * dft2(u)

    def adjoint(self, v):
        return np.real(idft2(self.mask * as_array(v)))


def make_subsampled_fourier(mask):
    return SubsampledFourierMap(mask)


def _centered_coordinates(shape):
    """Signed frequency indices in DFT ordering"""
    ky = fft.fftfreq(shape[0]) * shape[0]
    kx = fft.fftfreq(shape[1]) * shape[1]
    return np.meshgrid(ky, kx, indexing="ij")


def radial_lines_mask(shape, n_lines):
    """Binary mask of n_lines lines through the DC coefficient, in DFT ordering"""
    if n_lines < 1:
        raise OperatorError(f"n_lines must be >= 1, got {n_lines}")
    height, width = shape
    mask = np.zeros(shape)
    radius = np.hypot(height, width) / 2.0
    t = np.linspace(-radius, radius, int(4 * radius) + 1)
    for angle in np.arange(n_lines) * np.pi / n_lines:
        rows = np.round(t * np.sin(angle)).astype(int)
        cols = np.round(t * np.cos(angle)).astype(int)
        keep = (np.abs(rows) <= height // 2) & (np.abs(cols) <= width // 2)
        mask[rows[keep] % height, cols[keep] % width] = 1.0
    return mask


def random_mask(shape, fraction, seed=0, center_fraction=0.08):
    """Random variable-density mask: a fully sampled low-frequency block plus
    uniformly drawn coefficients up to the requested sampling fraction"""
    if not 0.0 <= fraction <= 1.0:
        raise OperatorError(f"fraction must lie in [0, 1], got {fraction}")
    ky, kx = _centered_coordinates(shape)
    half_h = max(1, int(round(center_fraction * shape[0] / 2)))
    half_w = max(1, int(round(center_fraction * shape[1] / 2)))
    mask = ((np.abs(ky) <= half_h) & (np.abs(kx) <= half_w)).astype(np.float64)

    target = int(round(fraction * mask.size))
    missing = target - int(mask.sum())
    if missing > 0:
        free = np.flatnonzero(mask.ravel() == 0)
        order = np.argsort(SplitMix64(seed).uniform(free.size), kind="stable")
        mask.ravel()[free[order[:missing]]] = 1.0
    return mask
