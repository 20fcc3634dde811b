"""
Segmentation Command Coordination

Two-phase Chan-Vese segmentation of a (noisy) phantom or input image.
Writes mask.pgm (0 / 255), relaxed.csv and metrics.json; Dice is reported
only when a ground-truth mask is known.

Config section `segmentation`: alpha, threshold, outer_iters, c_init [c1, c2].
"""

from pathlib import Path

import numpy as np

from core.config import extra_value, resolve_path
from core.errors import ConfigError
from shared.data_export import DataExporter, require_written
from reports.run_summary import write_run_summary
from Module_1_Grid.image_io import read_image, write_csv_image, write_pgm
from Module_1_Grid.noise import NoiseSpec, add_noise
from Module_8_Segmentation.chan_vese import DEFAULT_OUTER_ITERS, DEFAULT_THRESHOLD, ChanVeseSegmenter
from Module_9_Metrics.metrics import dice
from .problem_builder import NOISE_STREAM, ProblemBuilder, stream_seed

DEFAULT_ALPHA = 0.2

# phantoms whose support is the segmentation ground truth
BINARY_PHANTOMS = ("disk", "two_phase_disk")


class SEGMENTATION_MODULE:
    """Chan-Vese segmentation with optional Dice scoring"""

    def __init__(self, config, out_dir, logger, thread_count=1):
        self.config = config
        self.logger = logger
        self.thread_count = thread_count
        self.out_dir = Path(out_dir)
        self.out_dir.mkdir(parents=True, exist_ok=True)

        self.problem_builder = ProblemBuilder(config, logger)
        self.segmenter = ChanVeseSegmenter(logger, run_id="segment")
        self.data_exporter = DataExporter(logger)

    def ground_truth_mask(self, u_true):
        problem = self.config.problem
        if problem.ground_truth is not None:
            return read_image(resolve_path(self.config, problem.ground_truth)).data >= 0.5
        if problem.image is None and problem.phantom in BINARY_PHANTOMS:
            return u_true >= 0.5
        return None

    def settings(self):
        alpha = extra_value(self.config, "segmentation", "alpha", DEFAULT_ALPHA, float, lambda v: v > 0)
        threshold = extra_value(self.config, "segmentation", "threshold", DEFAULT_THRESHOLD, float,
                                lambda v: 0 < v < 1)
        outer_iters = extra_value(self.config, "segmentation", "outer_iters", DEFAULT_OUTER_ITERS, int,
                                  lambda v: v >= 1)
        c_init = extra_value(self.config, "segmentation", "c_init", None, list)
        if c_init is not None and (len(c_init) != 2 or not all(isinstance(c, (int, float)) for c in c_init)):
            raise ConfigError("c_init must be a list of two numbers", field="segmentation.c_init")
        return alpha, threshold, outer_iters, c_init

    def execute_segmentation(self):
        self.logger.log_module_start("10", "SEGMENT - two-phase Chan-Vese segmentation")

        alpha, threshold, outer_iters, c_init = self.settings()
        u_true = self.problem_builder.ground_truth()
        noise = self.config.noise
        y = add_noise(u_true, NoiseSpec(noise.kind, noise.level, stream_seed(self.config.seed, NOISE_STREAM)))

        result = self.segmenter.run(y, alpha, threshold=threshold, outer_iters=outer_iters, c_init=c_init)

        metrics = {
            'c1': result.c1,
            'c2': result.c2,
            'energy': result.energy,
            'rounds': result.rounds,
            'degenerate_region': bool(result.degenerate),
            'energy_increases': len(result.energy_increases),
            'pdhg_status': result.trace.status if result.trace is not None else "none",
        }
        truth = self.ground_truth_mask(u_true)
        if truth is not None:
            metrics['dice'] = dice(result.mask, truth)
            self.logger.info(f"📋 Dice against ground truth: {metrics['dice']:.4f}")
        else:
            self.logger.info("📋 No ground-truth mask, Dice omitted")

        mask_path = write_pgm(result.mask.astype(np.float64), self.out_dir / "mask.pgm", value_range=(0.0, 1.0))
        self.logger.track_file_created(mask_path)
        relaxed_path = write_csv_image(result.v, self.out_dir / "relaxed.csv")
        self.logger.track_file_created(relaxed_path)
        require_written(self.data_exporter.export_to_json(metrics, self.out_dir / "metrics.json", "Segmentation Metrics"),
                        "metrics.json")
        require_written(write_run_summary(self.logger, self.out_dir, "segment", metrics, self.config.source),
                        "summary.txt")

        if result.degenerate:
            self.logger.warning("⚠️  One phase became empty; the segmentation is degenerate")
        self.logger.info(f"✅ Segmentation completed in {result.rounds} rounds, c1={result.c1:.4g}, c2={result.c2:.4g}")
        return 0
