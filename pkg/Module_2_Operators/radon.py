"""
Parallel-Beam Radon Transform

Ray-driven line integrals with a matched adjoint. The image occupies
[-1/2, 1/2]^2 scaled by its longer side (pixel size d = 1 / max(H, W)); x runs
along columns, y along rows. For each (theta, s) the line
x cos(theta) + y sin(theta) = s is sampled with step d/2, and every sample
spreads bilinear interpolation weights times the step onto its four
neighbouring pixels. The adjoint applies the identical weights transposed,
so adjointness holds up to rounding.

Small geometries keep the weights as a scipy.sparse matrix; larger ones
recompute the weights of one angle at a time.
"""

from dataclasses import dataclass

import numpy as np
import pandas as pd
from scipy import sparse
from tqdm import tqdm

from core.errors import DegenerateGeometry, OperatorError, ShapeMismatch
from Module_1_Grid.grid_types import as_array
from .linear_map import LinearMap

# Above this many (estimated) weights the sparse matrix is not assembled
CACHE_ENTRY_LIMIT = 16_000_000


@dataclass(frozen=True)
class Sinogram:
    """Radon data over (angle, offset), angle-major"""

    data: np.ndarray
    angles: np.ndarray
    offsets: np.ndarray
    s_max: float

    def __post_init__(self):
        data = np.array(self.data, dtype=np.float64)
        angles = np.array(self.angles, dtype=np.float64)
        offsets = np.array(self.offsets, dtype=np.float64)
        if data.shape != (angles.size, offsets.size):
            raise ShapeMismatch(f"sinogram data {data.shape} does not match "
                                f"{angles.size} angles x {offsets.size} offsets")
        if np.any(np.diff(angles) <= 0):
            raise OperatorError("sinogram angles must be strictly increasing")
        for name, value in (("data", data), ("angles", angles), ("offsets", offsets)):
            value.setflags(write=False)
            object.__setattr__(self, name, value)

    @property
    def n_angles(self):
        return self.angles.size

    @property
    def n_offsets(self):
        return self.offsets.size


def sparse_angles(n_angles):
    """n_angles uniform angles on [0, pi)"""
    return np.arange(n_angles) * np.pi / n_angles


def limited_angles(n_angles, range_deg):
    """n_angles uniform angles on [0, range_deg) degrees"""
    if not 0 < range_deg <= 180:
        raise OperatorError(f"angle range must lie in (0, 180] degrees, got {range_deg}")
    return np.arange(n_angles) * np.deg2rad(range_deg) / n_angles


def default_offset_count(img_shape):
    """Odd offset count with spacing close to one pixel, so s = 0 is sampled"""
    height, width = img_shape
    half_diagonal_pixels = 0.5 * np.hypot(height, width)
    return 2 * int(np.ceil(half_diagonal_pixels)) + 1


class RadonMap(LinearMap):

    def __init__(self, n_angles, n_offsets, img_shape, angles=None, s_max=None, progress=False):
        if n_angles < 1:
            raise OperatorError(f"n_angles must be >= 1, got {n_angles}")
        if n_offsets is None:
            n_offsets = default_offset_count(img_shape)
        if n_offsets < 3:
            raise OperatorError(f"n_offsets must be >= 3, got {n_offsets}")
        super().__init__(img_shape, (n_angles, n_offsets))

        height, width = self.domain_shape
        self.pixel_size = 1.0 / max(height, width)
        self.half_diagonal = 0.5 * self.pixel_size * np.hypot(height, width)

        if s_max is None:
            s_max = self.half_diagonal
        if s_max < self.half_diagonal * (1.0 - 1e-12):
            raise DegenerateGeometry(f"offsets up to {s_max:.6g} do not cover the image "
                                     f"half-diagonal {self.half_diagonal:.6g}")
        self.s_max = float(s_max)

        self.angles = sparse_angles(n_angles) if angles is None else np.asarray(angles, dtype=np.float64)
        if self.angles.size != n_angles:
            raise ShapeMismatch(f"expected {n_angles} angles, got {self.angles.size}")
        if np.any(np.diff(self.angles) <= 0):
            raise OperatorError("angles must be strictly increasing")
        self.offsets = np.linspace(-self.s_max, self.s_max, n_offsets)

        self.step = 0.5 * self.pixel_size
        t_max = self.half_diagonal + self.pixel_size
        n_steps = int(np.ceil(2.0 * t_max / self.step))
        self.ray_samples = -t_max + (np.arange(n_steps) + 0.5) * self.step

        self._matrix = None
        if 4 * n_angles * n_offsets * n_steps <= CACHE_ENTRY_LIMIT:
            self._matrix = self._assemble(progress)

    @property
    def n_angles(self):
        return self.angles.size

    @property
    def n_offsets(self):
        return self.offsets.size

    def _angle_weights(self, k):
        """(ray index, pixel index, weight) triplets of angle k"""
        height, width = self.domain_shape
        cos_t, sin_t = np.cos(self.angles[k]), np.sin(self.angles[k])
        s = self.offsets[:, None]
        t = self.ray_samples[None, :]

        col = (s * cos_t - t * sin_t) / self.pixel_size + (width - 1) / 2.0
        row = (s * sin_t + t * cos_t) / self.pixel_size + (height - 1) / 2.0
        c0 = np.floor(col).astype(np.int64)
        r0 = np.floor(row).astype(np.int64)
        fc = col - c0
        fr = row - r0
        ray = np.broadcast_to(np.arange(self.n_offsets)[:, None], col.shape)

        rays, pixels, weights = [], [], []
        for dr, dc, w in ((0, 0, (1 - fr) * (1 - fc)), (0, 1, (1 - fr) * fc),
                          (1, 0, fr * (1 - fc)), (1, 1, fr * fc)):
            rr = r0 + dr
            cc = c0 + dc
            valid = (rr >= 0) & (rr < height) & (cc >= 0) & (cc < width) & (w > 0)
            rays.append(ray[valid])
            pixels.append((rr * width + cc)[valid])
            weights.append(w[valid] * self.step)
        return np.concatenate(rays), np.concatenate(pixels), np.concatenate(weights)

    def _assemble(self, progress):
        rows, cols, vals = [], [], []
        for k in tqdm(range(self.n_angles), desc="Assembling Radon geometry", disable=not progress):
            rays, pixels, weights = self._angle_weights(k)
            rows.append(rays + k * self.n_offsets)
            cols.append(pixels)
            vals.append(weights)
        shape = (self.n_angles * self.n_offsets, int(np.prod(self.domain_shape)))
        return sparse.csr_matrix((np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
                                 shape=shape)

    def apply(self, u):
        flat = np.asarray(as_array(u), dtype=np.float64).ravel()
        if self._matrix is not None:
            return (self._matrix @ flat).reshape(self.range_shape)
        out = np.empty(self.range_shape)
        for k in range(self.n_angles):
            rays, pixels, weights = self._angle_weights(k)
            out[k] = np.bincount(rays, weights=weights * flat[pixels], minlength=self.n_offsets)
        return out

    def adjoint(self, v):
        v = np.asarray(as_array(v), dtype=np.float64)
        if self._matrix is not None:
            return (self._matrix.T @ v.ravel()).reshape(self.domain_shape)
        size = int(np.prod(self.domain_shape))
        out = np.zeros(size)
        for k in range(self.n_angles):
            rays, pixels, weights = self._angle_weights(k)
            out += np.bincount(pixels, weights=weights * v[k, rays], minlength=size)
        return out.reshape(self.domain_shape)

    def to_sinogram(self, data):
        return Sinogram(data, self.angles, self.offsets, self.s_max)


def make_radon(n_angles, n_offsets, img_shape, angles=None, s_max=None, progress=False):
    return RadonMap(n_angles, n_offsets, img_shape, angles=angles, s_max=s_max, progress=progress)


def read_sinogram(file_path):
    """Read a sinogram CSV written by DataExporter.export_sinogram (uniform angles on [0, pi))"""
    with open(file_path, 'r', encoding='utf-8') as f:
        header = f.readline().strip()
    try:
        fields = dict(item.split("=", 1) for item in header.split(","))
        n_angles, n_offsets, s_max = int(fields["angles"]), int(fields["offsets"]), float(fields["smax"])
    except (KeyError, ValueError) as e:
        raise OperatorError(f"malformed sinogram header '{header}' in {file_path}") from e
    data = pd.read_csv(file_path, skiprows=1, header=None, dtype=np.float64).to_numpy()
    if data.shape != (n_angles, n_offsets):
        raise ShapeMismatch(f"sinogram body {data.shape} does not match header {n_angles} x {n_offsets}")
    return Sinogram(data, sparse_angles(n_angles), np.linspace(-s_max, s_max, n_offsets), s_max)
