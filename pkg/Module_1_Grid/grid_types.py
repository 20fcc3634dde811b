"""
Grid Containers

Validated containers for images (GridImage), complex spectra (ComplexGrid)
and two-channel vector fields (VectorField), plus the real inner product used
by every adjointness check.

Numerical kernels work on the underlying numpy arrays: images are float64
arrays of shape (height, width), vector fields have shape (2, height, width)
with channel 0 = px (along columns) and channel 1 = py (along rows).
"""

from dataclasses import dataclass

import numpy as np

from core.errors import GridError, ShapeMismatch


def _require_finite(data, name):
    if not np.all(np.isfinite(data)):
        raise GridError(f"{name} contains NaN or Inf entries")


@dataclass(frozen=True)
class GridImage:
    """2-D scalar field on a uniform pixel grid"""

    data: np.ndarray
    spacing: float = 1.0

    def __post_init__(self):
        data = np.array(self.data, dtype=np.float64)
        if data.ndim != 2 or data.size == 0:
            raise GridError(f"GridImage needs a non-empty 2-D array, got shape {data.shape}")
        if self.spacing <= 0:
            raise GridError(f"grid spacing must be positive, got {self.spacing}")
        _require_finite(data, "GridImage")
        data.setflags(write=False)
        object.__setattr__(self, "data", data)

    @property
    def width(self):
        return self.data.shape[1]

    @property
    def height(self):
        return self.data.shape[0]

    @property
    def shape(self):
        return self.data.shape

    @classmethod
    def zeros(cls, height, width, spacing=1.0):
        return cls(np.zeros((height, width)), spacing)

    def with_data(self, data):
        return GridImage(data, self.spacing)


@dataclass(frozen=True)
class ComplexGrid:
    """2-D complex field, e.g. the spectrum of a GridImage"""

    data: np.ndarray

    def __post_init__(self):
        data = np.array(self.data, dtype=np.complex128)
        if data.ndim != 2 or data.size == 0:
            raise GridError(f"ComplexGrid needs a non-empty 2-D array, got shape {data.shape}")
        _require_finite(data, "ComplexGrid")
        data.setflags(write=False)
        object.__setattr__(self, "data", data)

    @property
    def width(self):
        return self.data.shape[1]

    @property
    def height(self):
        return self.data.shape[0]


@dataclass(frozen=True)
class VectorField:
    """Two-channel field (px, py) paired with an image grid"""

    data: np.ndarray

    def __post_init__(self):
        data = np.array(self.data, dtype=np.float64)
        if data.ndim != 3 or data.shape[0] != 2 or data.shape[1] * data.shape[2] == 0:
            raise GridError(f"VectorField needs shape (2, height, width), got {data.shape}")
        _require_finite(data, "VectorField")
        data.setflags(write=False)
        object.__setattr__(self, "data", data)

    @property
    def px(self):
        return self.data[0]

    @property
    def py(self):
        return self.data[1]

    @property
    def width(self):
        return self.data.shape[2]

    @property
    def height(self):
        return self.data.shape[1]


def as_array(u):
    """Underlying float array of a container, or the array itself"""
    if isinstance(u, (GridImage, ComplexGrid, VectorField)):
        return u.data
    return np.asarray(u)


def check_same_shape(a, b, what="arrays"):
    if np.shape(a) != np.shape(b):
        raise ShapeMismatch(f"{what} differ in shape: {np.shape(a)} vs {np.shape(b)}")


def inner(a, b):
    """Real inner product Re<a, b>; valid for real, complex and stacked arrays"""
    if isinstance(a, tuple):
        return sum(inner(x, y) for x, y in zip(a, b))
    return float(np.real(np.vdot(as_array(b), as_array(a))))


def norm(a):
    if isinstance(a, tuple):
        return float(np.sqrt(sum(norm(x) ** 2 for x in a)))
    return float(np.linalg.norm(np.ravel(as_array(a))))
