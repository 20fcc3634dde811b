"""
Module_8_Segmentation

Two-phase Chan-Vese segmentation through its convex relaxation.
"""

from .chan_vese import (SegResult, ChanVeseSegmenter, chan_vese, solve_relaxed, relaxed_energy, two_means,
                        DEFAULT_THRESHOLD, DEFAULT_OUTER_ITERS)

__all__ = [
    'SegResult', 'ChanVeseSegmenter', 'chan_vese', 'solve_relaxed', 'relaxed_energy', 'two_means',
    'DEFAULT_THRESHOLD', 'DEFAULT_OUTER_ITERS',
]
