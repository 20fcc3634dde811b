"""
Module_10_Experiments

Command-line experiments: problem assembly from a run config, solver
dispatch, and the orchestrators behind denoise / deblur / mri / ct,
pnp_sweep, segment and illposed.
"""

from .problem_builder import Problem, ProblemBuilder, stream_seed
from .reconstruction import Reconstructor
from .experiment_plotter import ExperimentPlotter
from .reconstruction_orchestrator import RECONSTRUCTION_MODULE, COMMAND_OPERATORS
from .sweep_orchestrator import PNP_SWEEP_MODULE, build_denoiser, noise_levels
from .segmentation_orchestrator import SEGMENTATION_MODULE
from .illposed_orchestrator import ILLPOSED_MODULE
from .commands import COMMANDS, run_command, validate_command

__all__ = [
    'Problem', 'ProblemBuilder', 'stream_seed',
    'Reconstructor',
    'ExperimentPlotter',
    'RECONSTRUCTION_MODULE', 'COMMAND_OPERATORS',
    'PNP_SWEEP_MODULE', 'build_denoiser', 'noise_levels',
    'SEGMENTATION_MODULE',
    'ILLPOSED_MODULE',
    'COMMANDS', 'run_command', 'validate_command',
]
