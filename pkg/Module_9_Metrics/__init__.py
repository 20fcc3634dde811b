"""
Module_9_Metrics

PSNR, MSE, relative error and Dice, plus the analytic phantoms used by the
experiments.
"""

from .metrics import psnr, mse, rel_err, dice, PSNR_CAP
from .phantoms import (make_phantom, two_phase_disk_mask, rectangle_blocks, pixel_centers, PHANTOM_KINDS,
                       SHEPP_LOGAN_ELLIPSES, DISK_RADIUS, TWO_PHASE_RADIUS)

__all__ = [
    'psnr', 'mse', 'rel_err', 'dice', 'PSNR_CAP',
    'make_phantom', 'two_phase_disk_mask', 'rectangle_blocks', 'pixel_centers', 'PHANTOM_KINDS',
    'SHEPP_LOGAN_ELLIPSES', 'DISK_RADIUS', 'TWO_PHASE_RADIUS',
]
