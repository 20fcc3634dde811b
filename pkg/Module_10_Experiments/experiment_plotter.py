"""
Experiment Visualizations

Convergence traces and convergence-sweep curves as PDF figures, written only
when output.plots is set.
"""

import matplotlib.pyplot as plt
import numpy as np
import traceback
from pathlib import Path


class ExperimentPlotter:
    """Trace and sweep plots for one command run"""

    def __init__(self, logger, out_dir):
        self.logger = logger
        self.out_dir = Path(out_dir)

    def plot_trace(self, trace, title="Solver trace"):
        """Energy / gap and residual histories on log axes; None when there is nothing to plot"""
        frame = trace.to_frame()
        if frame.empty:
            return None

        plot_path = self.out_dir / "trace.pdf"
        try:
            fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(14, 5))

            # Plot 1: energy and duality gap
            for column, color in (("energy", "blue"), ("gap", "red")):
                values = frame[column].to_numpy(dtype=np.float64)
                finite = np.isfinite(values)
                if finite.any():
                    offset = values[finite] - np.min(values[finite]) if column == "energy" else np.abs(values[finite])
                    ax1.semilogy(frame["iter"][finite], np.maximum(offset, 1e-16), color=color, linewidth=2,
                                 label="energy - min" if column == "energy" else "gap")
            ax1.set_xlabel("Iteration", fontweight='bold')
            ax1.set_title(f"{title} - energy", fontweight='bold')
            ax1.legend()
            ax1.grid(True, alpha=0.3)

            # Plot 2: residuals
            for column, color in (("primal_res", "green"), ("dual_res", "purple")):
                values = frame[column].to_numpy(dtype=np.float64)
                finite = np.isfinite(values) & (values > 0)
                if finite.any():
                    ax2.semilogy(frame["iter"][finite], values[finite], color=color, linewidth=2, label=column)
            ax2.set_xlabel("Iteration", fontweight='bold')
            ax2.set_title(f"{title} - residuals ({trace.status})", fontweight='bold')
            ax2.legend()
            ax2.grid(True, alpha=0.3)

            plt.tight_layout()
            plt.savefig(plot_path, dpi=300, bbox_inches='tight')
            plt.close()
            return self.logger.verify_plot_creation(plot_path, "Solver trace")

        except Exception as e:
            self.logger.error(f"❌ Failed to create trace plot: {e}")
            self.logger.debug(traceback.format_exc())
            plt.close('all')
            return False

    def plot_sweep(self, table):
        """Reconstruction error against the noise level on log-log axes"""
        positive = table[table["delta"] > 0]
        if positive.empty:
            return None

        plot_path = self.out_dir / "sweep.pdf"
        try:
            fig, ax = plt.subplots(figsize=(8, 6))
            ax.loglog(positive["delta"], positive["err_vs_utrue"], color='blue', marker='o', linewidth=2,
                      label='error vs true image')
            if "err_vs_udagger" in positive.columns:
                ax.loglog(positive["delta"], positive["err_vs_udagger"], color='red', marker='s', linewidth=2,
                          label='error vs minimum-regularizer solution')
            ax.invert_xaxis()
            ax.set_xlabel("Noise level delta", fontweight='bold')
            ax.set_ylabel("Reconstruction error", fontweight='bold')
            ax.set_title("Convergent regularization sweep", fontweight='bold')
            ax.legend()
            ax.grid(True, alpha=0.3, which='both')

            plt.tight_layout()
            plt.savefig(plot_path, dpi=300, bbox_inches='tight')
            plt.close()
            return self.logger.verify_plot_creation(plot_path, "Convergence sweep")

        except Exception as e:
            self.logger.error(f"❌ Failed to create sweep plot: {e}")
            self.logger.debug(traceback.format_exc())
            plt.close('all')
            return False
