"""
Command Registry

Maps each `run <subcommand>` to its orchestrator and converts library
failures into exit code 1 at the command boundary.
"""

import traceback

from core.errors import ConfigError, VariProError
from .reconstruction_orchestrator import COMMAND_OPERATORS, RECONSTRUCTION_MODULE
from .sweep_orchestrator import PNP_SWEEP_MODULE, build_denoiser, noise_levels
from .segmentation_orchestrator import SEGMENTATION_MODULE
from .illposed_orchestrator import ILLPOSED_MODULE

EXIT_ERROR = 1


def _reconstruction(command):
    def run(config, out_dir, logger, thread_count):
        return RECONSTRUCTION_MODULE(command, config, out_dir, logger, thread_count).execute_reconstruction()
    return run


COMMANDS = {
    "denoise": _reconstruction("denoise"),
    "deblur": _reconstruction("deblur"),
    "mri": _reconstruction("mri"),
    "ct": _reconstruction("ct"),
    "pnp_sweep": lambda config, out_dir, logger, threads:
        PNP_SWEEP_MODULE(config, out_dir, logger, threads).execute_sweep(),
    "segment": lambda config, out_dir, logger, threads:
        SEGMENTATION_MODULE(config, out_dir, logger, threads).execute_segmentation(),
    "illposed": lambda config, out_dir, logger, threads:
        ILLPOSED_MODULE(config, out_dir, logger, threads).execute_illposed(),
}


def validate_command(command, config):
    """Command-specific checks that need no computation (used by --dry-run)"""
    if command not in COMMANDS:
        raise ConfigError(f"unknown command '{command}'")
    if command in COMMAND_OPERATORS and config.operator.kind not in COMMAND_OPERATORS[command]:
        raise ConfigError(f"{command} expects operator kind {' or '.join(COMMAND_OPERATORS[command])}, "
                          f"got '{config.operator.kind}'", field="operator.kind")
    if command == "illposed" and config.operator.kind != "blur":
        raise ConfigError(f"illposed expects operator kind blur, got '{config.operator.kind}'",
                          field="operator.kind")
    if command == "pnp_sweep":
        noise_levels(config)
        build_denoiser(config, (16, 16))
    return config


def run_command(command, config, out_dir, logger, thread_count=1):
    """Run one subcommand; returns its exit code (0 ok, 1 error, 2 not converged)"""
    if command not in COMMANDS:
        logger.error(f"❌ Unknown command '{command}' (choose from {', '.join(COMMANDS)})")
        return EXIT_ERROR
    try:
        return COMMANDS[command](config, out_dir, logger, thread_count)
    except ConfigError as e:
        logger.error(f"❌ Configuration error: {e}")
        return EXIT_ERROR
    except VariProError as e:
        logger.error(f"❌ {command} failed: {type(e).__name__}: {e}")
        logger.debug(traceback.format_exc())
        return EXIT_ERROR
    except OSError as e:
        logger.error(f"❌ {command} could not write its outputs: {e}")
        logger.debug(traceback.format_exc())
        return EXIT_ERROR
