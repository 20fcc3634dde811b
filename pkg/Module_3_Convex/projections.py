"""
Elementary Proximal Maps

Closed-form proxes and projections. All functions take (v, step-or-radius)
and return a new array.
"""

import numpy as np

from core.errors import VariProError
from Module_1_Grid.grid_types import as_array


def soft_threshold(v, tau):
    """prox of tau*||.||_1: sign(v) * max(|v| - tau, 0)"""
    v = as_array(v)
    return np.sign(v) * np.maximum(np.abs(v) - tau, 0.0)


def clamp_box(v, lo, hi):
    """Projection onto the box [lo, hi] pixelwise"""
    return np.clip(as_array(v), lo, hi)


def project_linf_ball(v, radius=1.0):
    """Projection onto {||x||_inf <= radius}; the prox of its indicator for every step"""
    return np.clip(as_array(v), -radius, radius)


def project_ball(p, alpha):
    """Pixelwise projection of a (2, H, W) field onto |p(x)|_2 <= alpha"""
    if alpha <= 0:
        raise VariProError(f"ball radius must be > 0, got {alpha}")
    p = np.asarray(as_array(p), dtype=np.float64)
    magnitude = np.sqrt(p[0] ** 2 + p[1] ** 2)
    return p / np.maximum(1.0, magnitude / alpha)
