"""
Lipschitz Maps

Fixed (untrained) maps Gamma with an analytic Lipschitz constant, used as the
learnable part of unrolled schemes and as R - Id in the equilibrium operator.
certify_lipschitz checks the analytic constant against a sampled lower bound.
"""

from dataclasses import dataclass
from typing import Callable

import numpy as np

from core.errors import DeqError
from Module_1_Grid.grid_types import as_array, norm
from Module_2_Operators.linear_map import IdentityMap

CERTIFICATE_PAIRS = 1000


@dataclass(frozen=True)
class LipschitzMap:
    func: Callable
    constant: float
    name: str = "map"

    def __post_init__(self):
        if not np.isfinite(self.constant) or self.constant < 0:
            raise DeqError(f"Lipschitz constant of {self.name} must be finite and >= 0, got {self.constant}")

    def __call__(self, x):
        return self.func(x)


def zero_map():
    return LipschitzMap(lambda x: np.zeros(np.shape(x)), 0.0, "zero")


def linear_filter_map(A, scale=1.0):
    """Gamma(x) = scale * A x for a real square LinearMap A; constant |scale| * ||A||"""
    if A.range_is_complex or A.range_shape != A.domain_shape:
        raise DeqError("linear filter maps need a real operator with equal domain and range")
    return LipschitzMap(lambda x: scale * A.apply(x), abs(scale) * A.norm_estimate,
                        f"linear_filter({type(A).__name__}, {scale:g})")


def scaled_identity_map(shape, scale):
    return linear_filter_map(IdentityMap(shape), scale)


def clamped_affine_map(weight, bias=0.0, lo=-1.0, hi=1.0):
    """Gamma(x) = clip(weight * x + bias, lo, hi); constant |weight|"""
    if lo > hi:
        raise DeqError(f"clamp interval [{lo}, {hi}] is empty")
    return LipschitzMap(lambda x: np.clip(weight * np.asarray(as_array(x)) + bias, lo, hi), abs(weight),
                        f"clamped_affine({weight:g}, {bias:g})")


def certify_lipschitz(gamma, shape, pairs=CERTIFICATE_PAIRS, seed=0, logger=None, run_id=None):
    """Sampled lower bound max ||G(x) - G(z)|| / ||x - z|| against the analytic constant.

    Half of the pairs are close (||x - z|| ~ 1e-3) to probe local slopes of
    piecewise maps such as clamps.
    """
    rng = np.random.default_rng(seed)
    sampled = 0.0
    for k in range(pairs):
        x = rng.standard_normal(shape)
        if k % 2:
            z = x + 1e-3 * rng.standard_normal(shape)
        else:
            z = rng.standard_normal(shape)
        distance = norm(x - z)
        if distance > 0:
            sampled = max(sampled, norm(gamma(x) - gamma(z)) / distance)

    report = {
        "map": gamma.name,
        "pairs": pairs,
        "sampled_lower_bound": float(sampled),
        "analytic_constant": float(gamma.constant),
        "certified": bool(sampled <= gamma.constant * (1.0 + 1e-9) + 1e-12),
    }
    if logger is not None and run_id is not None:
        logger.log_certificate_report("lipschitz", run_id, report)
    return report
