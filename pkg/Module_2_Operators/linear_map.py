"""
Linear Forward Operators

LinearMap is the interface every forward operator A implements: apply,
adjoint and a norm estimate that upper-bounds the spectral norm. This file
also holds the elementary maps (identity, binary mask, discrete gradient),
the block operator u -> (Au, Bu) and the operator-level utilities
(adjointness check, power-iteration norm estimate, zero-fill baseline).
"""

from abc import ABC, abstractmethod

import numpy as np

from core.errors import NonBinaryMask, ShapeMismatch
from Module_1_Grid.grid_types import as_array, inner, norm
from Module_1_Grid.differential import gradient, divergence

# Safety factor applied to power-iteration norm estimates
NORM_SAFETY = 1.01
POWER_ITERATIONS = 100


class LinearMap(ABC):
    """Bounded linear operator between real image space and a real or complex range"""

    def __init__(self, domain_shape, range_shape, range_is_complex=False):
        self.domain_shape = tuple(domain_shape)
        self.range_shape = tuple(range_shape)
        self.range_is_complex = range_is_complex
        self._norm_estimate = None

    @abstractmethod
    def apply(self, u):
        pass

    @abstractmethod
    def adjoint(self, v):
        pass

    def _compute_norm(self):
        return estimate_operator_norm(self)

    @property
    def norm_estimate(self):
        """Upper estimate of ||A||; computed once and cached"""
        if self._norm_estimate is None:
            self._norm_estimate = float(self._compute_norm())
        return self._norm_estimate

    def normal(self, u):
        """A*A u"""
        return self.adjoint(self.apply(u))

    def check_domain(self, u):
        if np.shape(u) != self.domain_shape:
            raise ShapeMismatch(f"{type(self).__name__} expects domain shape {self.domain_shape}, "
                                f"got {np.shape(u)}")

    def random_domain(self, rng):
        return rng.standard_normal(self.domain_shape)

    def random_range(self, rng):
        if self.range_is_complex:
            return rng.standard_normal(self.range_shape) + 1j * rng.standard_normal(self.range_shape)
        return rng.standard_normal(self.range_shape)

    def zeros_range(self):
        return np.zeros(self.range_shape, dtype=np.complex128 if self.range_is_complex else np.float64)


class IdentityMap(LinearMap):
    """A = Id (denoising)"""

    def __init__(self, shape):
        super().__init__(shape, shape)
        self._norm_estimate = 1.0

    def apply(self, u):
        return np.array(as_array(u), dtype=np.float64)

    def adjoint(self, v):
        return np.array(as_array(v), dtype=np.float64)


class MaskMap(LinearMap):
    """A = diag(mask) (inpainting); self-adjoint projector"""

    def __init__(self, mask):
        mask = np.asarray(as_array(mask), dtype=np.float64)
        if not np.all((mask == 0) | (mask == 1)):
            raise NonBinaryMask("mask entries must be 0 or 1")
        super().__init__(mask.shape, mask.shape)
        self.mask = mask
        self._norm_estimate = 1.0 if np.any(mask == 1) else 0.0

    def apply(self, u):
        return self.mask * as_array(u)

    def adjoint(self, v):
        return self.mask * as_array(v)


class GradientMap(LinearMap):
    """Discrete gradient as an operator into (2, height, width) vector fields"""

    def __init__(self, shape, spacing=1.0):
        super().__init__(shape, (2,) + tuple(shape))
        self.spacing = spacing
        # ||grad||^2 <= 8 / h^2 for forward differences
        self._norm_estimate = float(np.sqrt(8.0)) / spacing

    def apply(self, u):
        return gradient(as_array(u), self.spacing)

    def adjoint(self, v):
        return -divergence(v, self.spacing)


class StackedMap(LinearMap):
    """Block operator u -> (A_1 u, ..., A_n u); range elements are tuples"""

    def __init__(self, maps):
        maps = list(maps)
        shapes = {m.domain_shape for m in maps}
        if len(maps) == 0 or len(shapes) != 1:
            raise ShapeMismatch(f"stacked maps need a common domain, got {sorted(shapes)}")
        super().__init__(maps[0].domain_shape, ())
        self.maps = maps
        self.range_shape = tuple(m.range_shape for m in maps)

    def _compute_norm(self):
        return float(np.sqrt(sum(m.norm_estimate ** 2 for m in self.maps)))

    def apply(self, u):
        return tuple(m.apply(u) for m in self.maps)

    def adjoint(self, v):
        return sum(m.adjoint(part) for m, part in zip(self.maps, v))

    def random_range(self, rng):
        return tuple(m.random_range(rng) for m in self.maps)

    def zeros_range(self):
        return tuple(m.zeros_range() for m in self.maps)


def make_identity(shape):
    return IdentityMap(shape)


def make_mask(mask):
    return MaskMap(mask)


def make_gradient(shape, spacing=1.0):
    return GradientMap(shape, spacing)


def stack_maps(maps):
    return StackedMap(maps)


def estimate_operator_norm(A, iterations=POWER_ITERATIONS, seed=0):
    """Power iteration on A*A; returns NORM_SAFETY * sqrt(lambda_max)"""
    x = np.random.default_rng(seed).standard_normal(A.domain_shape)
    x /= np.linalg.norm(x)
    value = 0.0
    for _ in range(iterations):
        x = A.normal(x)
        value = float(np.linalg.norm(x))
        if value == 0.0:
            return 0.0
        x /= value
    return NORM_SAFETY * np.sqrt(value)


def adjointness_residual(A, rng):
    """|<Au, v> - <u, A*v>| / (||u|| ||v||) for one random pair"""
    u = A.random_domain(rng)
    v = A.random_range(rng)
    lhs = inner(A.apply(u), v)
    rhs = inner(u, A.adjoint(v))
    return abs(lhs - rhs) / (norm(u) * norm(v))


def zero_fill(A, y):
    """Naive baseline reconstruction A*y"""
    return A.adjoint(y)
