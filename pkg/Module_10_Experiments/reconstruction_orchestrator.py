"""
Reconstruction Command Coordination

Runs denoise / deblur / mri / ct: builds the problem from the config,
reconstructs, and writes recon.pgm, recon.csv, trace.csv, metrics.json and
summary.txt (plus sinogram.csv for ct).
"""

import time
from pathlib import Path

import numpy as np

from core.errors import ConfigError, ExperimentError
from shared.data_export import DataExporter, require_written
from reports.run_summary import write_run_summary
from Module_1_Grid.image_io import write_csv_image, write_pgm
from Module_2_Operators.linear_map import zero_fill
from Module_9_Metrics.metrics import psnr, rel_err
from .problem_builder import ProblemBuilder
from .reconstruction import Reconstructor
from .experiment_plotter import ExperimentPlotter

# operator kinds each reconstruction command accepts
COMMAND_OPERATORS = {
    "denoise": ("identity", "mask"),
    "deblur": ("blur",),
    "mri": ("fourier",),
    "ct": ("radon",),
}

EXIT_OK = 0
EXIT_NOT_CONVERGED = 2


def display_range(u_true):
    """Fixed PGM scaling window taken from the ground truth"""
    lo, hi = float(np.min(u_true)), float(np.max(u_true))
    return (lo, hi) if hi > lo else (0.0, max(1.0, hi))


class RECONSTRUCTION_MODULE:
    """Variational reconstruction for one forward model"""

    def __init__(self, command, config, out_dir, logger, thread_count=1):
        if command not in COMMAND_OPERATORS:
            raise ConfigError(f"unknown reconstruction command '{command}'")
        if config.operator.kind not in COMMAND_OPERATORS[command]:
            raise ConfigError(f"{command} expects operator kind {' or '.join(COMMAND_OPERATORS[command])}, "
                              f"got '{config.operator.kind}'", field="operator.kind")
        self.command = command
        self.config = config
        self.logger = logger
        self.thread_count = thread_count
        self.out_dir = self._setup_directories(out_dir)

        # Initialize reconstruction components
        self.problem_builder = ProblemBuilder(config, logger)
        self.reconstructor = Reconstructor(logger, thread_count)
        self.plotter = ExperimentPlotter(logger, self.out_dir)
        self.data_exporter = DataExporter(logger)

    def _setup_directories(self, out_dir):
        base_dir = Path(out_dir)
        base_dir.mkdir(parents=True, exist_ok=True)
        return base_dir

    def export_images(self, u, u_true):
        pgm_path = write_pgm(u, self.out_dir / "recon.pgm", value_range=display_range(u_true))
        self.logger.track_file_created(pgm_path)
        csv_path = write_csv_image(u, self.out_dir / "recon.csv")
        self.logger.track_file_created(csv_path)

    def execute_reconstruction(self):
        """Returns the exit code: 0 when the solver converged, 2 when it stopped at max_iters"""
        self.logger.log_module_start("10", f"{self.command.upper()} - variational reconstruction")

        problem = self.problem_builder.build()
        self.logger.info(f"📋 {self.command}: {problem.shape[0]}x{problem.shape[1]} image, "
                         f"{self.config.noise.kind} noise level {self.config.noise.level:g}")

        start = time.perf_counter()
        u, trace = self.reconstructor.reconstruct(problem, self.config.solver)
        wall_ms = (time.perf_counter() - start) * 1000.0

        baseline = np.real(zero_fill(problem.A, problem.y))
        metrics = {
            'psnr': psnr(u, problem.u_true),
            'rel_err': rel_err(u, problem.u_true),
            'iters': trace.iterations,
            'wall_ms': wall_ms,
            'baseline_psnr': psnr(baseline, problem.u_true),
            'method': trace.method,
            'status': trace.status,
            'threads': self.thread_count,
        }

        self.export_images(u, problem.u_true)
        require_written(self.data_exporter.export_trace(trace, self.out_dir / "trace.csv"), "trace.csv")
        require_written(self.data_exporter.export_to_json(metrics, self.out_dir / "metrics.json", "Reconstruction Metrics"),
                        "metrics.json")
        if self.command == "ct":
            require_written(self.data_exporter.export_sinogram(problem.A.to_sinogram(problem.y),
                                                               self.out_dir / "sinogram.csv"), "sinogram.csv")
        if self.config.output.plots and self.plotter.plot_trace(trace, title=self.command) is False:
            raise ExperimentError("could not write trace.pdf")

        require_written(write_run_summary(self.logger, self.out_dir, self.command, metrics, self.config.source),
                        "summary.txt")

        self.logger.info(f"✅ {self.command} completed: PSNR {metrics['psnr']:.2f} dB "
                         f"(zero-fill baseline {metrics['baseline_psnr']:.2f} dB), "
                         f"{metrics['iters']} iterations, status {trace.status}")
        return EXIT_OK if trace.converged else EXIT_NOT_CONVERGED
