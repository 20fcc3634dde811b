"""
Ill-Posedness Demonstration

Gaussian blur of the phantom at a sequence of noise levels, inverted once
naively (division by the blur symbol) and once with Tikhonov regularization
(A*A + alpha I) u = A*y. Writes illposed.csv with columns
noise_level, naive_err, tikhonov_err (relative errors).

Config: operator.kind must be blur; regularizer.weight is alpha;
sweep.deltas lists the noise standard deviations; sweep.floor thresholds
the symbol for the naive inverse (0 = raw division).
"""

from pathlib import Path

import pandas as pd

from core.config import extra_value
from core.errors import ConfigError
from shared.data_export import DataExporter, require_written
from reports.run_summary import write_run_summary
from Module_1_Grid.noise import NoiseSpec, add_noise
from Module_2_Operators.blur import naive_inverse
from Module_5_Solvers.linear_solve import solve_normal_equations
from Module_9_Metrics.metrics import rel_err
from .problem_builder import NOISE_STREAM, ProblemBuilder, stream_seed

DEFAULT_NOISE_LEVELS = (0.0, 0.001, 0.005, 0.01, 0.05, 0.1)
ILLPOSED_COLUMNS = ['noise_level', 'naive_err', 'tikhonov_err']


class ILLPOSED_MODULE:
    """Naive inverse filtering against Tikhonov reconstruction"""

    def __init__(self, config, out_dir, logger, thread_count=1):
        if config.operator.kind != "blur":
            raise ConfigError(f"illposed expects operator kind blur, got '{config.operator.kind}'",
                              field="operator.kind")
        self.config = config
        self.logger = logger
        self.thread_count = thread_count
        self.out_dir = Path(out_dir)
        self.out_dir.mkdir(parents=True, exist_ok=True)

        self.problem_builder = ProblemBuilder(config, logger)
        self.data_exporter = DataExporter(logger)

    def noise_levels(self):
        levels = extra_value(self.config, "sweep", "deltas", list(DEFAULT_NOISE_LEVELS), list)
        if not levels or not all(isinstance(d, (int, float)) and not isinstance(d, bool) and d >= 0 for d in levels):
            raise ConfigError("deltas must be a non-empty list of nonnegative numbers", field="sweep.deltas")
        return [float(d) for d in levels]

    def execute_illposed(self):
        self.logger.log_module_start("10", "ILLPOSED - naive inversion vs Tikhonov regularization")

        alpha = self.config.regularizer.weight
        floor = extra_value(self.config, "sweep", "floor", 0.0, float, lambda v: v >= 0)
        u_true = self.problem_builder.ground_truth()
        A = self.problem_builder.operator(u_true.shape)
        exact = A.apply(u_true)

        rows = []
        for index, level in enumerate(self.noise_levels()):
            noise_spec = NoiseSpec("gaussian", level, stream_seed(self.config.seed, NOISE_STREAM + index))
            y = add_noise(exact, noise_spec)
            naive = naive_inverse(A, y, floor)
            if alpha > 0:
                tikhonov = solve_normal_equations(A, A.adjoint(y), alpha)
            else:
                tikhonov = naive
            rows.append({
                'noise_level': level,
                'naive_err': rel_err(naive, u_true),
                'tikhonov_err': rel_err(tikhonov, u_true),
            })
            self.logger.debug(f"noise {level:g}: naive {rows[-1]['naive_err']:.4g}, "
                              f"tikhonov {rows[-1]['tikhonov_err']:.4g}")

        table = pd.DataFrame(rows, columns=ILLPOSED_COLUMNS)
        require_written(self.data_exporter.export_to_csv(table, self.out_dir / "illposed.csv", "Ill-Posedness Table"),
                        "illposed.csv")

        results = {
            'alpha': alpha,
            'levels': len(rows),
            'worst_naive_err': float(table['naive_err'].max()),
            'worst_tikhonov_err': float(table['tikhonov_err'].max()),
        }
        require_written(write_run_summary(self.logger, self.out_dir, "illposed", results, self.config.source),
                        "summary.txt")
        self.logger.info(f"✅ Ill-posedness table written: naive error up to {results['worst_naive_err']:.3g}, "
                         f"Tikhonov up to {results['worst_tikhonov_err']:.3g}")
        return 0
