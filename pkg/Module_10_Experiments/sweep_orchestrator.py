"""
Convergent Regularization Sweep Coordination

Runs PnP-ADMM with a spectrally filtered linear denoiser over a decreasing
sequence of noise levels with tau = c * delta, certifies the denoiser and
the filter, and writes sweep.csv plus the monotone flag.

Config sections:
    denoiser  kind gaussian (width, floor) | tikhonov (gamma) | kernel (kernel_size, kernel_sigma, floor)
    sweep     deltas, or delta_max + levels (halved), include_exact, rule_constant,
              calibrate, max_iters, tol
"""

from pathlib import Path

import numpy as np

from core.config import extra_value
from core.errors import ConfigError, ExperimentError
from shared.data_export import DataExporter, require_written
from reports.run_summary import write_run_summary
from Module_2_Operators.blur import gaussian_kernel
from Module_5_Solvers.solver_config import SolverConfig
from Module_7A_PlugAndPlay.denoiser import SYMBOL_FLOOR, SpectralDenoiser, gaussian_denoiser, tikhonov_denoiser
from Module_7A_PlugAndPlay.prox_check import verify_prox_characterization
from Module_7A_PlugAndPlay.spectral_filter import SpectralFilter, filter_admissibility
from Module_7A_PlugAndPlay.sweep import (SWEEP_SOLVER_CONFIG, ConvergenceSweep, calibrate_linear_rule, linear_rule,
                                         sweep_is_monotone)
from .problem_builder import ProblemBuilder
from .experiment_plotter import ExperimentPlotter

DENOISER_KINDS = ("gaussian", "tikhonov", "kernel")
DEFAULT_DELTA_MAX = 0.1
DEFAULT_LEVELS = 6
DEFAULT_RULE_CONSTANT = 1.0


def build_denoiser(config, shape):
    kind = extra_value(config, "denoiser", "kind", "gaussian", str)
    if kind not in DENOISER_KINDS:
        raise ConfigError(f"'{kind}' is not one of {', '.join(DENOISER_KINDS)}", field="denoiser.kind")
    floor = extra_value(config, "denoiser", "floor", SYMBOL_FLOOR, float, lambda v: 0 < v <= 1)
    if kind == "gaussian":
        width = extra_value(config, "denoiser", "width", 1.0, float, lambda v: v > 0)
        return gaussian_denoiser(shape, width, floor)
    if kind == "tikhonov":
        return tikhonov_denoiser(extra_value(config, "denoiser", "gamma", 1.0, float, lambda v: v >= 0), shape)
    size = extra_value(config, "denoiser", "kernel_size", 5, int, lambda v: v >= 1)
    sigma = extra_value(config, "denoiser", "kernel_sigma", 1.0, float, lambda v: v > 0)
    return SpectralDenoiser.from_kernel(gaussian_kernel(size, sigma), shape, floor)


def noise_levels(config):
    """Explicit deltas, or delta_max halved levels-1 times; include_exact appends 0"""
    deltas = extra_value(config, "sweep", "deltas", None, list)
    if deltas is not None:
        if not deltas or not all(isinstance(d, (int, float)) and not isinstance(d, bool) for d in deltas):
            raise ConfigError("deltas must be a non-empty list of numbers", field="sweep.deltas")
        levels = [float(d) for d in deltas]
    else:
        delta_max = extra_value(config, "sweep", "delta_max", DEFAULT_DELTA_MAX, float, lambda v: v > 0)
        count = extra_value(config, "sweep", "levels", DEFAULT_LEVELS, int, lambda v: v >= 1)
        levels = [delta_max * 0.5 ** k for k in range(count)]
    if extra_value(config, "sweep", "include_exact", False, bool):
        levels.append(0.0)
    return levels


def sweep_solver_config(config):
    max_iters = extra_value(config, "sweep", "max_iters", SWEEP_SOLVER_CONFIG.max_iters, int, lambda v: v >= 1)
    tol = extra_value(config, "sweep", "tol", SWEEP_SOLVER_CONFIG.tol, float, lambda v: v >= 0)
    return SWEEP_SOLVER_CONFIG.with_(max_iters=max_iters, tol=tol)


class PNP_SWEEP_MODULE:
    """Convergent regularization experiment for plug-and-play reconstruction"""

    def __init__(self, config, out_dir, logger, thread_count=1):
        self.config = config
        self.logger = logger
        self.thread_count = thread_count
        self.out_dir = Path(out_dir)
        self.out_dir.mkdir(parents=True, exist_ok=True)

        self.problem_builder = ProblemBuilder(config, logger)
        self.plotter = ExperimentPlotter(logger, self.out_dir)
        self.data_exporter = DataExporter(logger)

    def rule_constant(self, A, u_true, D, levels, cfg):
        constant = extra_value(self.config, "sweep", "rule_constant", None, float, lambda v: v > 0)
        if not extra_value(self.config, "sweep", "calibrate", False, bool):
            return DEFAULT_RULE_CONSTANT if constant is None else constant
        if levels[0] <= 0:
            raise ConfigError("calibration needs a positive first noise level", field="sweep.calibrate")
        constant = calibrate_linear_rule(A, u_true, D, levels[0], seed=self.config.seed, cfg=cfg, logger=self.logger)
        self.logger.info(f"🔧 Calibrated tau rule: tau = {constant:g} * delta")
        return constant

    def certify(self, D, tau):
        """Prox characterization of D and admissibility of the filter at the first level"""
        prox_report = verify_prox_characterization(D, seed=self.config.seed, logger=self.logger, run_id="pnp_sweep")
        filter_report = {"admissible": True, "reason": "exact level only"}
        if tau > 0:
            filter_report = filter_admissibility(SpectralFilter(tau), D.eigenvalues, logger=self.logger,
                                                 run_id="pnp_sweep")
        return prox_report, filter_report

    def execute_sweep(self):
        self.logger.log_module_start("10", "PNP SWEEP - convergent plug-and-play regularization")

        u_true = self.problem_builder.ground_truth()
        A = self.problem_builder.operator(u_true.shape)
        D = build_denoiser(self.config, u_true.shape)
        levels = noise_levels(self.config)
        cfg = sweep_solver_config(self.config)
        if self.config.noise.level > 0:
            self.logger.debug("noise section ignored: sweep levels set the noise")

        constant = self.rule_constant(A, u_true, D, levels, cfg)
        prox_report, filter_report = self.certify(D, constant * levels[0])
        if not prox_report["passed"] or not filter_report["admissible"]:
            self.logger.warning("⚠️  denoiser or filter certificate failed; the sweep may not converge")

        sweep = ConvergenceSweep(self.logger, self.thread_count, progress=self.config.output.progress)
        table = sweep.run(A, u_true, D, linear_rule(constant), levels, seed=self.config.seed, cfg=cfg)
        monotone = sweep_is_monotone(table)

        capped = int(np.sum(table["iters"] >= cfg.max_iters))
        if capped:
            self.logger.warning(f"⚠️  {capped} sweep level(s) stopped at max_iters={cfg.max_iters}")

        require_written(self.data_exporter.export_sweep(table, self.out_dir / "sweep.csv"), "sweep.csv")
        if self.config.output.plots and self.plotter.plot_sweep(table) is False:
            raise ExperimentError("could not write sweep.pdf")

        error_column = "err_vs_udagger" if "err_vs_udagger" in table.columns else "err_vs_utrue"
        results = {
            'levels': len(levels),
            'rule_constant': constant,
            'first_error': float(table[error_column].iloc[0]),
            'last_error': float(table[error_column].iloc[-1]),
            'error_reference': error_column,
            'prox_certificate_passed': bool(prox_report["passed"]),
            'filter_admissible': bool(filter_report["admissible"]),
        }
        flag = f"monotone={'true' if monotone else 'false'}"
        require_written(write_run_summary(self.logger, self.out_dir, "pnp_sweep", results, self.config.source,
                                          lines=[flag]), "summary.txt")

        print(flag)
        self.logger.info(f"✅ Sweep completed: {flag}")
        return 0
