"""
Convex Chan-Vese Segmentation

Two-phase segmentation through the relaxed problem
    min_{v in [0,1]} alpha TV(v) + sum (y - c1)^2 v + (y - c2)^2 (1 - v)
solved by PDHG at fixed constants, followed by thresholding. The constants
are re-estimated from the thresholded mask between rounds. Phase 1 (mask
True) is the region attached to c1; two_means puts the brighter mean in c1.
"""

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from core.errors import SegmentationError
from core.logger import ProfessionalLogger
from Module_1_Grid.grid_types import as_array
from Module_1_Grid.differential import gradient
from Module_2_Operators.linear_map import make_gradient
from Module_3_Convex.moreau import ProxFunctional
from Module_3_Convex.norms import group_norm_functional, mixed_norm
from Module_5_Solvers.primal_dual import PrimalDualSolver
from Module_5_Solvers.solver_config import SolverConfig

DEFAULT_THRESHOLD = 0.5
DEFAULT_OUTER_ITERS = 5
TWO_MEANS_MAX_ITERS = 100
ENERGY_TOL = 1e-9

SEGMENTATION_SOLVER_CONFIG = SolverConfig(max_iters=5000, tol=1e-7, criterion="fixed_point_residual")


@dataclass
class SegResult:
    v: np.ndarray
    mask: np.ndarray
    c1: float
    c2: float
    energy: float
    energy_history: List[float] = field(default_factory=list)
    degenerate: bool = False
    rounds: int = 0
    trace: Optional[object] = None
    constants_history: List[Tuple[float, float]] = field(default_factory=list)
    energy_increases: List[dict] = field(default_factory=list)


def two_means(y):
    """Lloyd 2-means on the intensities; returns (c1, c2) with c1 >= c2"""
    y = np.asarray(as_array(y), dtype=np.float64).ravel()
    lo, hi = float(np.min(y)), float(np.max(y))
    if hi == lo:
        return hi, lo
    c1, c2 = hi, lo
    for _ in range(TWO_MEANS_MAX_ITERS):
        upper = y > 0.5 * (c1 + c2)
        new_c1, new_c2 = float(np.mean(y[upper])), float(np.mean(y[~upper]))
        if new_c1 == c1 and new_c2 == c2:
            break
        c1, c2 = new_c1, new_c2
    return c1, c2


def _region_costs(y, c1, c2):
    return (y - c1) ** 2, (y - c2) ** 2


def relaxed_energy(v, y, c1, c2, alpha, spacing=1.0):
    """alpha TV_iso(v) + sum (y - c1)^2 v + (y - c2)^2 (1 - v)"""
    v = np.asarray(as_array(v), dtype=np.float64)
    y = np.asarray(as_array(y), dtype=np.float64)
    inside, outside = _region_costs(y, c1, c2)
    return float(alpha * mixed_norm(gradient(v, spacing), "iso") + np.sum(inside * v + outside * (1.0 - v)))


def _data_functional(f):
    """H(v) = <f, v> + indicator of [0, 1]; H*(q) = sum max(q - f, 0)"""

    def value(v):
        v = as_array(v)
        if np.any(v < -1e-10) or np.any(v > 1.0 + 1e-10):
            return np.inf
        return float(np.sum(f * v))

    return ProxFunctional(
        value=value,
        prox=lambda w, tau: np.clip(as_array(w) - tau * f, 0.0, 1.0),
        conj_value=lambda q: float(np.sum(np.maximum(as_array(q) - f, 0.0))),
        name="region_data",
    )


def solve_relaxed(y, c1, c2, alpha, cfg=None, v0=None, spacing=1.0, logger=None, p0=None, with_dual=False):
    """Relaxed problem at fixed constants; returns (v, trace), or (v, p, trace) with_dual"""
    if alpha <= 0:
        raise SegmentationError(f"alpha must be > 0, got {alpha}")
    y = np.asarray(as_array(y), dtype=np.float64)
    inside, outside = _region_costs(y, c1, c2)
    H = _data_functional(inside - outside)
    J = group_norm_functional(alpha, "iso")
    K = make_gradient(y.shape, spacing)
    start = np.full(y.shape, 0.5) if v0 is None else np.clip(as_array(v0), 0.0, 1.0)
    v, p, trace = PrimalDualSolver(logger, run_id="chan_vese").run(J, H, K, start, p0,
                                                                   cfg or SEGMENTATION_SOLVER_CONFIG)
    return (v, p, trace) if with_dual else (v, trace)


class ChanVeseSegmenter:

    def __init__(self, logger=None, run_id="chan_vese"):
        self.logger = logger or ProfessionalLogger.console()
        self.run_id = run_id

    def _update_constants(self, y, mask, c1, c2):
        if not np.any(mask) or np.all(mask):
            return c1, c2, True
        return float(np.mean(y[mask])), float(np.mean(y[~mask])), False

    def _check_energy(self, step, rounds, before, after, increases):
        """Record and report a sub-step that raised the relaxed energy beyond ENERGY_TOL"""
        if after <= before + ENERGY_TOL * max(1.0, abs(before)):
            return
        increase = {'round': rounds, 'step': step, 'before': before, 'after': after}
        increases.append(increase)
        self.logger.log_solver_event(self.run_id, "energy_increase", increase)

    def run(self, y, alpha, threshold=DEFAULT_THRESHOLD, outer_iters=DEFAULT_OUTER_ITERS, c_init=None,
            cfg=None, spacing=1.0):
        if alpha <= 0:
            raise SegmentationError(f"alpha must be > 0, got {alpha}")
        if not 0.0 < threshold < 1.0:
            raise SegmentationError(f"threshold must lie in (0, 1), got {threshold}")
        y = np.asarray(as_array(y), dtype=np.float64)
        if not np.all(np.isfinite(y)):
            raise SegmentationError("image contains non-finite values")

        c1, c2 = two_means(y) if c_init is None else (float(c_init[0]), float(c_init[1]))
        v = np.full(y.shape, 0.5)
        p = None
        energy = relaxed_energy(v, y, c1, c2, alpha, spacing)
        history = [energy]
        constants = [(c1, c2)]
        increases = []
        degenerate = False
        mask = v >= threshold
        trace = None
        rounds = 0

        for rounds in range(1, outer_iters + 1):
            # (a) relaxed problem at fixed constants, warm-started in both variables
            v, p, trace = solve_relaxed(y, c1, c2, alpha, cfg, v0=v, p0=p, spacing=spacing,
                                        logger=self.logger, with_dual=True)
            new_energy = relaxed_energy(v, y, c1, c2, alpha, spacing)
            self._check_energy("relaxed_solve", rounds, energy, new_energy, increases)
            energy = new_energy

            # (b) region means over the thresholded mask
            new_mask = v >= threshold
            new_c1, new_c2, empty = self._update_constants(y, new_mask, c1, c2)
            if empty:
                degenerate = True
                self.logger.log_solver_event(self.run_id, "degenerate_region", {
                    'round': rounds, 'pixels_in_mask': int(np.sum(new_mask)), 'c1': c1, 'c2': c2,
                })
            c_changed = (new_c1, new_c2) != (c1, c2)
            if c_changed:
                new_energy = relaxed_energy(v, y, new_c1, new_c2, alpha, spacing)
                self._check_energy("constant_update", rounds, energy, new_energy, increases)
                c1, c2, energy = new_c1, new_c2, new_energy
            history.append(energy)
            constants.append((c1, c2))

            mask_unchanged = np.array_equal(new_mask, mask)
            mask = new_mask
            if rounds > 1 and mask_unchanged and not c_changed:
                break

        if increases:
            self.logger.warning(f"⚠️  Chan-Vese: relaxed energy rose in {len(increases)} sub-step(s)")
        self.logger.debug(f"Chan-Vese: {rounds} rounds, c1={c1:.4g}, c2={c2:.4g}, energy={energy:.6g}")
        return SegResult(v=v, mask=mask, c1=c1, c2=c2, energy=energy, energy_history=history,
                         degenerate=degenerate, rounds=rounds, trace=trace, constants_history=constants,
                         energy_increases=increases)


def chan_vese(y, alpha, threshold=DEFAULT_THRESHOLD, outer_iters=DEFAULT_OUTER_ITERS, c_init=None, cfg=None,
              logger=None):
    return ChanVeseSegmenter(logger).run(y, alpha, threshold, outer_iters, c_init, cfg)
