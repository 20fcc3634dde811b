"""
Reconstruction and Segmentation Metrics
"""

import numpy as np

from core.errors import GridError, ShapeMismatch
from Module_1_Grid.grid_types import as_array, norm

# PSNR reported for exact reconstructions
PSNR_CAP = 99.0


def _pair(u, ref):
    u = np.asarray(as_array(u), dtype=np.float64)
    ref = np.asarray(as_array(ref), dtype=np.float64)
    if u.shape != ref.shape:
        raise ShapeMismatch(f"shapes differ: {u.shape} vs {ref.shape}")
    return u, ref


def mse(u, ref):
    u, ref = _pair(u, ref)
    return float(np.mean((u - ref) ** 2))


def psnr(u, ref, peak=1.0):
    """10 log10(peak^2 / MSE) in dB, capped at 99"""
    if peak <= 0:
        raise GridError(f"peak must be > 0, got {peak}")
    error = mse(u, ref)
    if error == 0:
        return PSNR_CAP
    return float(min(PSNR_CAP, 10.0 * np.log10(peak ** 2 / error)))


def rel_err(u, ref):
    """||u - ref|| / ||ref||"""
    u, ref = _pair(u, ref)
    reference = norm(ref)
    difference = norm(u - ref)
    if reference == 0:
        return 0.0 if difference == 0 else float("inf")
    return difference / reference


def dice(mask_a, mask_b):
    """2 |A n B| / (|A| + |B|); 1 when both masks are empty"""
    a = np.asarray(as_array(mask_a))
    b = np.asarray(as_array(mask_b))
    if a.shape != b.shape:
        raise ShapeMismatch(f"mask shapes differ: {a.shape} vs {b.shape}")
    for m in (a, b):
        if m.dtype != bool and not np.all((m == 0) | (m == 1)):
            raise GridError("dice needs binary masks")
    a, b = a.astype(bool), b.astype(bool)
    total = int(a.sum() + b.sum())
    if total == 0:
        return 1.0
    return 2.0 * int(np.logical_and(a, b).sum()) / total
