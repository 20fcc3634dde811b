"""
Analytic Phantoms

Deterministic test images on a size x size grid. Pixel centers sit at
x = (j + 1/2) / size - 1/2 (columns) and y = 1/2 - (i + 1/2) / size (rows,
pointing up), so the image covers [-1/2, 1/2]^2.

    disk            intensity 1 inside radius 0.4
    rectangles      three separated axis-aligned blocks, intensities 0.3 / 0.6 / 1.0
    shepp_like      modified Shepp-Logan head, ten ellipses (table below)
    two_phase_disk  intensity 1 inside radius 0.3 on a 0 background
    constant        0.5 everywhere
    smooth          0.5 + 0.25 sin(2 pi x) cos(2 pi y), one period across the grid
"""

import numpy as np

from core.errors import GridError
from Module_1_Grid.grid_types import GridImage

PHANTOM_KINDS = ("disk", "rectangles", "shepp_like", "two_phase_disk", "constant", "smooth")
MIN_PHANTOM_SIZE = 16

DISK_RADIUS = 0.4
TWO_PHASE_RADIUS = 0.3
CONSTANT_LEVEL = 0.5

# (row_start, row_stop, col_start, col_stop) as fractions of the size, intensity
RECTANGLE_BLOCKS = (
    ((0.10, 0.40, 0.10, 0.45), 0.3),
    ((0.55, 0.90, 0.10, 0.40), 0.6),
    ((0.20, 0.80, 0.60, 0.90), 1.0),
)

# Modified Shepp-Logan: intensity, semi-axes (a, b), center (x0, y0), rotation in degrees;
# geometry on [-1, 1]^2
SHEPP_LOGAN_ELLIPSES = (
    (1.0, 0.6900, 0.9200, 0.00, 0.0000, 0.0),
    (-0.8, 0.6624, 0.8740, 0.00, -0.0184, 0.0),
    (-0.2, 0.1100, 0.3100, 0.22, 0.0000, -18.0),
    (-0.2, 0.1600, 0.4100, -0.22, 0.0000, 18.0),
    (0.1, 0.2100, 0.2500, 0.00, 0.3500, 0.0),
    (0.1, 0.0460, 0.0460, 0.00, 0.1000, 0.0),
    (0.1, 0.0460, 0.0460, 0.00, -0.1000, 0.0),
    (0.1, 0.0460, 0.0230, -0.08, -0.6050, 0.0),
    (0.1, 0.0230, 0.0230, 0.00, -0.6060, 0.0),
    (0.1, 0.0230, 0.0460, 0.06, -0.6050, 0.0),
)


def pixel_centers(size):
    """(x, y) coordinate arrays of shape (size, size)"""
    t = (np.arange(size) + 0.5) / size - 0.5
    return t[np.newaxis, :].repeat(size, axis=0), -t[:, np.newaxis].repeat(size, axis=1)


def _pixel_index(fraction, size):
    return int(np.floor(fraction * size + 0.5))


def rectangle_blocks(size):
    """Pixel bounds ((r0, r1, c0, c1), intensity) of the rectangles phantom, stops exclusive"""
    return [(tuple(_pixel_index(f, size) for f in bounds), intensity) for bounds, intensity in RECTANGLE_BLOCKS]


def two_phase_disk_mask(size, radius=TWO_PHASE_RADIUS):
    x, y = pixel_centers(size)
    return x ** 2 + y ** 2 <= radius ** 2


def _shepp_like(size):
    x, y = pixel_centers(size)
    X, Y = 2.0 * x, 2.0 * y
    image = np.zeros((size, size))
    for intensity, a, b, x0, y0, phi in SHEPP_LOGAN_ELLIPSES:
        c, s = np.cos(np.radians(phi)), np.sin(np.radians(phi))
        dx, dy = X - x0, Y - y0
        inside = ((dx * c + dy * s) / a) ** 2 + ((-dx * s + dy * c) / b) ** 2 <= 1.0
        image[inside] += intensity
    return image


def make_phantom(kind, size, spacing=1.0):
    if kind not in PHANTOM_KINDS:
        raise GridError(f"unknown phantom '{kind}'")
    if size < MIN_PHANTOM_SIZE:
        raise GridError(f"phantom size must be >= {MIN_PHANTOM_SIZE}, got {size}")

    if kind == "disk":
        x, y = pixel_centers(size)
        image = (x ** 2 + y ** 2 <= DISK_RADIUS ** 2).astype(np.float64)
    elif kind == "rectangles":
        image = np.zeros((size, size))
        for (r0, r1, c0, c1), intensity in rectangle_blocks(size):
            image[r0:r1, c0:c1] = intensity
    elif kind == "shepp_like":
        image = _shepp_like(size)
    elif kind == "two_phase_disk":
        image = two_phase_disk_mask(size).astype(np.float64)
    elif kind == "smooth":
        x, y = pixel_centers(size)
        image = 0.5 + 0.25 * np.sin(2.0 * np.pi * x) * np.cos(2.0 * np.pi * y)
    else:
        image = np.full((size, size), CONSTANT_LEVEL)
    return GridImage(image, spacing)
