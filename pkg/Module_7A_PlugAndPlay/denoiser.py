"""
Linear Denoisers

A linear denoiser D is a symmetric operator with spectrum in [lambda_lo, 1],
lambda_lo > 0. It is then the prox of the quadratic
J(x) = 1/2 <x, (D^-1 - Id) x>, which this module evaluates in D's eigenbasis.

Two representations:
    DenseDenoiser     explicit matrix on the flattened grid; eigenpairs of its
                      symmetric part by scipy.linalg.eigh
    SpectralDenoiser  convolution diagonalized by the unitary DFT; the
                      eigenvalues are the (real) DFT symbol
"""

from abc import ABC, abstractmethod

import numpy as np
from scipy import linalg

from core.errors import DenoiserError, SingularDenoiser
from Module_1_Grid.grid_types import as_array
from Module_1_Grid.fourier import dft2, idft2, frequency_grid
from Module_2_Operators.blur import kernel_symbol

# Kernel symbols are floored here so the denoiser norm is bounded from below
SYMBOL_FLOOR = 1e-3


class LinearDenoiser(ABC):

    def __init__(self, shape):
        self.shape = tuple(shape)

    @property
    @abstractmethod
    def eigenvalues(self):
        """Flat array of eigenvalues"""

    @abstractmethod
    def apply(self, x):
        pass

    @abstractmethod
    def coefficients(self, x):
        """Coordinates of x in the orthonormal eigenbasis (same order as eigenvalues)"""

    @abstractmethod
    def apply_spectral_function(self, values, x):
        """sum_i values_i <x, e_i> e_i"""

    @abstractmethod
    def with_eigenvalues(self, values):
        """Denoiser with the same eigenvectors and new eigenvalues"""

    @abstractmethod
    def symmetric_defect(self):
        """||D - D*|| (Frobenius)"""

    @property
    def lower_bound(self):
        return float(np.min(self.eigenvalues))

    @property
    def upper_bound(self):
        return float(np.max(self.eigenvalues))

    def require_invertible(self):
        if self.lower_bound <= 0:
            raise SingularDenoiser(f"denoiser spectrum reaches {self.lower_bound:.3g} <= 0")

    def regularizer_weights(self):
        """(1 - lambda) / lambda per eigen-direction"""
        self.require_invertible()
        lam = self.eigenvalues
        return (1.0 - lam) / lam

    def apply_inverse_minus_identity(self, x):
        """(D^-1 - Id) x"""
        return self.apply_spectral_function(self.regularizer_weights(), x)

    def __call__(self, x):
        return self.apply(x)


class DenseDenoiser(LinearDenoiser):

    def __init__(self, matrix, shape):
        super().__init__(shape)
        matrix = np.asarray(matrix, dtype=np.float64)
        n = int(np.prod(self.shape))
        if matrix.shape != (n, n):
            raise DenoiserError(f"denoiser matrix {matrix.shape} does not match grid {self.shape}")
        self.matrix = matrix
        self._eigenvalues, self.eigenvectors = linalg.eigh(0.5 * (matrix + matrix.T))

    @classmethod
    def from_eigen(cls, eigenvectors, eigenvalues, shape):
        matrix = (eigenvectors * eigenvalues) @ eigenvectors.T
        denoiser = cls.__new__(cls)
        LinearDenoiser.__init__(denoiser, shape)
        denoiser.matrix = 0.5 * (matrix + matrix.T)
        denoiser._eigenvalues = np.asarray(eigenvalues, dtype=np.float64)
        denoiser.eigenvectors = eigenvectors
        return denoiser

    @property
    def eigenvalues(self):
        return self._eigenvalues

    def apply(self, x):
        return (self.matrix @ np.asarray(as_array(x), dtype=np.float64).ravel()).reshape(self.shape)

    def coefficients(self, x):
        return self.eigenvectors.T @ np.asarray(as_array(x), dtype=np.float64).ravel()

    def apply_spectral_function(self, values, x):
        return (self.eigenvectors @ (values * self.coefficients(x))).reshape(self.shape)

    def with_eigenvalues(self, values):
        return DenseDenoiser.from_eigen(self.eigenvectors, values, self.shape)

    def symmetric_defect(self):
        return float(np.linalg.norm(self.matrix - self.matrix.T))


class SpectralDenoiser(LinearDenoiser):

    def __init__(self, symbol):
        symbol = np.asarray(symbol)
        if np.iscomplexobj(symbol):
            if np.max(np.abs(symbol.imag)) > 1e-12 * max(1.0, np.max(np.abs(symbol))):
                raise DenoiserError("denoiser symbol must be real (symmetric kernel)")
            symbol = symbol.real
        super().__init__(symbol.shape)
        self.symbol = np.array(symbol, dtype=np.float64)

    @classmethod
    def from_kernel(cls, kernel, shape, floor=SYMBOL_FLOOR):
        """Convolution denoiser of a symmetric kernel; symbol clipped to [floor, 1]"""
        symbol = kernel_symbol(np.asarray(as_array(kernel), dtype=np.float64), shape)
        return cls(np.clip(np.real(symbol), floor, 1.0))

    @property
    def eigenvalues(self):
        return self.symbol.ravel()

    def apply(self, x):
        return np.real(idft2(self.symbol * dft2(x)))

    def coefficients(self, x):
        return dft2(x).ravel()

    def apply_spectral_function(self, values, x):
        return np.real(idft2(np.reshape(values, self.shape) * dft2(x)))

    def with_eigenvalues(self, values):
        return SpectralDenoiser(np.reshape(values, self.shape))

    def symmetric_defect(self):
        return 0.0

    def to_dense(self):
        """Explicit matrix on the flattened grid (small grids only)"""
        n = int(np.prod(self.shape))
        columns = [self.apply(e.reshape(self.shape)).ravel() for e in np.eye(n)]
        return DenseDenoiser(np.column_stack(columns), self.shape)


def tikhonov_denoiser(gamma, shape):
    """D = (1 + gamma)^-1 Id, the prox of gamma/2 ||x||^2"""
    if gamma < 0:
        raise DenoiserError(f"gamma must be >= 0, got {gamma}")
    return SpectralDenoiser(np.full(shape, 1.0 / (1.0 + gamma)))


def gaussian_denoiser(shape, width, floor=SYMBOL_FLOOR):
    """Gaussian low-pass with symbol exp(-width^2 |omega|^2 / 2), floored"""
    wy, wx = frequency_grid(shape)
    return SpectralDenoiser(np.maximum(np.exp(-0.5 * width ** 2 * (wx ** 2 + wy ** 2)), floor))


def denoiser_regularizer_value(D, x):
    """J(x) = 1/2 sum_i ((1 - lambda_i) / lambda_i) |<x, e_i>|^2"""
    weights = D.regularizer_weights()
    c = D.coefficients(x)
    return float(0.5 * np.sum(weights * np.abs(c) ** 2))
