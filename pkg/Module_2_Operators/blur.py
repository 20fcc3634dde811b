"""
Periodic Convolution

Blur operator A = k * u with periodic boundary, diagonalized by the DFT.
The kernel is centred at index (kh // 2, kw // 2); its unnormalized DFT is
the operator symbol, so a delta kernel has symbol 1 everywhere.
"""

import numpy as np
from scipy import fft

from core.errors import EmptyKernel, OperatorError
from core.logger import ProfessionalLogger
from Module_1_Grid.grid_types import as_array
from .linear_map import LinearMap


def gaussian_kernel(size, sigma):
    """Normalized size x size Gaussian kernel"""
    if size < 1 or sigma <= 0:
        raise OperatorError(f"gaussian kernel needs size >= 1 and sigma > 0, got {size}, {sigma}")
    x = np.arange(size) - (size - 1) / 2.0
    g = np.exp(-x ** 2 / (2.0 * sigma ** 2))
    kernel = np.outer(g, g)
    return kernel / kernel.sum()


def kernel_symbol(kernel, shape):
    """DFT symbol of a kernel embedded periodically in an image of the given shape"""
    kh, kw = kernel.shape
    if kh > shape[0] or kw > shape[1]:
        raise OperatorError(f"kernel {kernel.shape} larger than image {tuple(shape)}")
    padded = np.zeros(shape)
    padded[:kh, :kw] = kernel
    padded = np.roll(padded, (-(kh // 2), -(kw // 2)), axis=(0, 1))
    return fft.fft2(padded)


class BlurMap(LinearMap):
    """Periodic convolution with a nonnegative kernel of unit mass"""

    def __init__(self, kernel, shape, logger=None):
        super().__init__(shape, shape)
        self.logger = logger or ProfessionalLogger.console()
        kernel = np.asarray(as_array(kernel), dtype=np.float64)
        if kernel.size == 0 or kernel.ndim != 2:
            raise EmptyKernel("convolution kernel is empty")
        if np.any(kernel < 0):
            raise OperatorError("convolution kernel must be nonnegative")
        mass = kernel.sum()
        if mass <= 0:
            raise EmptyKernel("convolution kernel has zero mass")

        self.normalized = not np.isclose(mass, 1.0, rtol=0.0, atol=1e-12)
        if self.normalized:
            self.logger.warning(f"⚠️  Blur kernel mass {mass:.6g} != 1, kernel normalized")
            kernel = kernel / mass

        self.kernel = kernel
        self.symbol = kernel_symbol(kernel, shape)
        self._norm_estimate = float(np.max(np.abs(self.symbol)))

    def apply(self, u):
        return np.real(fft.ifft2(self.symbol * fft.fft2(as_array(u))))

    def adjoint(self, v):
        return np.real(fft.ifft2(np.conj(self.symbol) * fft.fft2(as_array(v))))


def make_blur(kernel, shape=None, logger=None):
    """Blur operator; shape defaults to the kernel's own shape"""
    kernel = np.asarray(as_array(kernel), dtype=np.float64)
    return BlurMap(kernel, kernel.shape if shape is None else shape, logger)


def naive_inverse(blur, y, floor=0.0):
    """Inverse filtering y / symbol, with |symbol| < floor treated as floor.

    floor = 0 divides by the raw symbol and shows the noise amplification
    of the unregularized inverse.
    """
    symbol = blur.symbol
    if floor > 0:
        small = np.abs(symbol) < floor
        symbol = np.where(small, floor * np.exp(1j * np.angle(symbol)), symbol)
    with np.errstate(divide="ignore", invalid="ignore"):
        spectrum = fft.fft2(as_array(y)) / symbol
    spectrum[~np.isfinite(spectrum)] = 0.0
    return np.real(fft.ifft2(spectrum))
