"""
Problem Assembly

Turns a RunConfig into the pieces of one reconstruction problem: ground
truth, forward operator, noisy data, data fidelity and regularizer.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from core.config import resolve_path
from core.errors import ConfigError
from core.logger import ProfessionalLogger
from Module_1_Grid.image_io import read_image
from Module_1_Grid.noise import NoiseSpec, SplitMix64, add_noise
from Module_2_Operators.blur import gaussian_kernel, make_blur
from Module_2_Operators.fourier_sampling import make_subsampled_fourier, radial_lines_mask, random_mask
from Module_2_Operators.linear_map import make_identity, make_mask
from Module_2_Operators.radon import limited_angles, make_radon, sparse_angles
from Module_4_Fidelity.fidelity import Fidelity
from Module_6_Regularizers.regularizer import Regularizer, load_prototypes
from Module_9_Metrics.phantoms import make_phantom

FOURIER_MASKS = ("radial", "random", "full")

# offsets the noise streams of operator construction and observation
MASK_STREAM = 1
NOISE_STREAM = 2


def stream_seed(seed, stream):
    return (int(seed) * 0x9E3779B97F4A7C15 + stream) & ((1 << 64) - 1)


@dataclass
class Problem:
    u_true: np.ndarray
    A: object
    y: np.ndarray
    fidelity: Fidelity
    regularizer: Optional[Regularizer]

    @property
    def shape(self):
        return self.u_true.shape


class ProblemBuilder:

    def __init__(self, config, logger=None):
        self.config = config
        self.logger = logger or ProfessionalLogger.console()

    def ground_truth(self):
        problem = self.config.problem
        if problem.image is not None:
            image = read_image(resolve_path(self.config, problem.image)).data
            self.logger.info(f"📋 Ground truth read from {problem.image} {image.shape}")
            return np.array(image)
        return np.array(make_phantom(problem.phantom, problem.size).data)

    def operator(self, shape):
        section = self.config.operator
        kind = section.kind
        if kind == "identity":
            return make_identity(shape)
        if kind == "blur":
            return make_blur(gaussian_kernel(section.kernel_size, section.kernel_sigma), shape, self.logger)
        if kind == "mask":
            return make_mask(random_mask(shape, section.mask_fraction, stream_seed(self.config.seed, MASK_STREAM),
                                         center_fraction=0.0))
        if kind == "fourier":
            if section.mask not in FOURIER_MASKS:
                raise ConfigError(f"'{section.mask}' is not one of {', '.join(FOURIER_MASKS)}", field="operator.mask")
            if section.mask == "radial":
                mask = radial_lines_mask(shape, section.n_lines)
            elif section.mask == "random":
                mask = random_mask(shape, section.mask_fraction, stream_seed(self.config.seed, MASK_STREAM))
            else:
                mask = np.ones(shape)
            return make_subsampled_fourier(mask)

        if section.angle_range_deg >= 180.0:
            angles = sparse_angles(section.n_angles)
        else:
            angles = limited_angles(section.n_angles, section.angle_range_deg)
        n_offsets = section.n_offsets
        return make_radon(section.n_angles, n_offsets, shape, angles=angles, progress=self.config.output.progress)

    def observe(self, A, u_true):
        """A u_true corrupted by the configured noise (complex ranges: Gaussian only)"""
        noise = self.config.noise
        exact = A.apply(u_true)
        noise_spec = NoiseSpec(noise.kind, noise.level, stream_seed(self.config.seed, NOISE_STREAM))
        if not A.range_is_complex:
            return add_noise(exact, noise_spec)
        if noise.level == 0:
            return exact
        if noise.kind != "gaussian":
            raise ConfigError("complex measurements support gaussian noise only", field="noise.kind")
        z = SplitMix64(noise_spec.seed).normal(2 * exact.size)
        m = exact.size
        perturbation = noise.level * (z[:m] + 1j * z[m:]).reshape(exact.shape) / np.sqrt(2.0)
        return exact + A.mask * perturbation

    def regularizer(self, shape):
        section = self.config.regularizer
        if section.kind == "none" or section.weight == 0:
            return None
        prototypes = ()
        if section.kind == "proto_dist":
            if section.prototypes is None:
                raise ConfigError("proto_dist needs a prototype directory", field="regularizer.prototypes")
            prototypes = load_prototypes(resolve_path(self.config, section.prototypes))
            if prototypes[0].shape != tuple(shape):
                raise ConfigError(f"prototypes have shape {prototypes[0].shape}, images {tuple(shape)}",
                                  field="regularizer.prototypes")
        return Regularizer(section.kind, section.weight, prototypes=prototypes, rho0=section.rho0)

    def build(self):
        u_true = self.ground_truth()
        A = self.operator(u_true.shape)
        y = self.observe(A, u_true)
        fidelity = Fidelity(self.config.fidelity.kind, y)
        problem = Problem(u_true=u_true, A=A, y=y, fidelity=fidelity, regularizer=self.regularizer(u_true.shape))
        self.logger.debug(f"Problem: {type(A).__name__} on {u_true.shape}, fidelity={fidelity.kind}, "
                          f"regularizer={problem.regularizer.kind if problem.regularizer else 'none'}")
        return problem
