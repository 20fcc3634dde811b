"""
Deterministic Noise Generation

Observation noise for y = Au + n. All randomness comes from a SplitMix64
stream so that results are a pure function of (image, NoiseSpec) and do not
depend on numpy's generator versions.
"""

from dataclasses import dataclass

import numpy as np

from core.errors import GridError, NegativeIntensity
from .grid_types import GridImage, as_array

NOISE_KINDS = ("gaussian", "poisson", "impulse")

_GOLDEN_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX_1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX_2 = np.uint64(0x94D049BB133111EB)
_MASK64 = (1 << 64) - 1

# Poisson inversion sampling underflows exp(-lam) beyond this rate
_POISSON_INVERSION_LIMIT = 500.0


@dataclass(frozen=True)
class NoiseSpec:
    """Noise model: gaussian (level = sigma), poisson (level = scaling), impulse (level = fraction)"""

    kind: str
    level: float
    seed: int = 0

    def __post_init__(self):
        if self.kind not in NOISE_KINDS:
            raise GridError(f"unknown noise kind '{self.kind}'")
        if not np.isfinite(self.level) or self.level < 0:
            raise GridError(f"noise level must be >= 0, got {self.level}")
        if self.kind == "impulse" and self.level > 1:
            raise GridError(f"impulse fraction must lie in [0, 1], got {self.level}")


class SplitMix64:
    """SplitMix64 generator, vectorized over blocks of outputs"""

    def __init__(self, seed):
        self.state = int(seed) & _MASK64

    def next_uint64(self, count):
        steps = np.arange(1, count + 1, dtype=np.uint64)
        with np.errstate(over="ignore"):
            z = np.uint64(self.state) + steps * _GOLDEN_GAMMA
            self.state = (self.state + count * int(_GOLDEN_GAMMA)) & _MASK64
            z = (z ^ (z >> np.uint64(30))) * _MIX_1
            z = (z ^ (z >> np.uint64(27))) * _MIX_2
            z = z ^ (z >> np.uint64(31))
        return z

    def uniform(self, count):
        """Uniform samples in the open interval (0, 1), 53-bit resolution"""
        bits = self.next_uint64(count) >> np.uint64(11)
        return (bits.astype(np.float64) + 0.5) * 2.0 ** -53

    def normal(self, count):
        """Standard normal samples by Box-Muller, interleaving cos and sin branches"""
        pairs = (count + 1) // 2
        u = self.uniform(2 * pairs)
        radius = np.sqrt(-2.0 * np.log(u[0::2]))
        angle = 2.0 * np.pi * u[1::2]
        z = np.empty(2 * pairs)
        z[0::2] = radius * np.cos(angle)
        z[1::2] = radius * np.sin(angle)
        return z[:count]


def _poisson_inversion(rates, uniforms):
    """Per-pixel Poisson samples by CDF inversion"""
    counts = np.zeros(rates.shape)
    prob = np.exp(-rates)
    cdf = prob.copy()
    active = uniforms > cdf
    k = 0
    k_max = int(np.max(rates + 20.0 * np.sqrt(rates) + 50.0)) if rates.size else 0
    while np.any(active) and k < k_max:
        k += 1
        prob = np.where(active, prob * rates / k, prob)
        cdf = np.where(active, cdf + prob, cdf)
        counts = np.where(active, k, counts)
        active = active & (uniforms > cdf)
    counts[active] = counts[active] + 1
    return counts


def add_noise(u, noise_spec):
    """Corrupt u according to noise_spec; deterministic given noise_spec.seed.

    gaussian: u + sigma * z.
    poisson:  Poisson(u / level) * level per pixel (inversion sampling; rates
              above 500 use the rounded normal approximation).
    impulse:  round(fraction * n) pixels chosen by the stream are set to
              min(u) or max(u) with equal probability.
    """
    is_container = isinstance(u, GridImage)
    data = np.array(as_array(u), dtype=np.float64)
    stream = SplitMix64(noise_spec.seed)
    n = data.size

    if noise_spec.level == 0:
        noisy = data
    elif noise_spec.kind == "gaussian":
        noisy = data + noise_spec.level * stream.normal(n).reshape(data.shape)
    elif noise_spec.kind == "poisson":
        if np.any(data < 0):
            raise NegativeIntensity("poisson noise requires a nonnegative image")
        rates = data.ravel() / noise_spec.level
        uniforms = stream.uniform(n)
        counts = np.empty(n)
        small = rates <= _POISSON_INVERSION_LIMIT
        counts[small] = _poisson_inversion(rates[small], uniforms[small])
        if np.any(~small):
            z = stream.normal(int(np.count_nonzero(~small)))
            counts[~small] = np.maximum(0.0, np.round(rates[~small] + np.sqrt(rates[~small]) * z))
        noisy = (counts * noise_spec.level).reshape(data.shape)
    else:
        count = int(round(noise_spec.level * n))
        order = np.argsort(stream.uniform(n), kind="stable")[:count]
        use_max = stream.uniform(count) >= 0.5
        flat = data.ravel().copy()
        flat[order] = np.where(use_max, data.max(), data.min())
        noisy = flat.reshape(data.shape)

    if is_container:
        return u.with_data(noisy)
    return noisy
