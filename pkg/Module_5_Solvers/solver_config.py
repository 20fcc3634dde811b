"""
Solver Configuration and Traces

SolverConfig carries the step sizes and stopping rule shared by every
iterative scheme; SolverTrace records one row per iteration and converts to
a pandas DataFrame for export.
"""

from dataclasses import dataclass, field, replace
from typing import List, Optional

import numpy as np
import pandas as pd

from core.errors import ConvergenceFailure, SolverError

CRITERIA = ("gap", "fixed_point_residual", "energy_delta")
TRACE_FIELDS = ("iter", "energy", "gap", "primal_res", "dual_res", "iterate_norm")

# Consecutive energy increases tolerated before Diverged
DIVERGENCE_WINDOW = 10


@dataclass(frozen=True)
class SolverConfig:
    max_iters: int = 500
    tol: float = 1e-6
    tau: Optional[float] = None
    sigma: Optional[float] = None
    lam: float = 1.0
    theta: float = 1.0
    criterion: str = "fixed_point_residual"
    strict: bool = False
    inner_tol: float = 1e-10
    inner_max_iters: int = 5000

    def __post_init__(self):
        if self.max_iters < 1:
            raise SolverError(f"max_iters must be >= 1, got {self.max_iters}")
        if self.tol < 0:
            raise SolverError(f"tol must be >= 0, got {self.tol}")
        for name in ("tau", "sigma"):
            value = getattr(self, name)
            if value is not None and value <= 0:
                raise SolverError(f"{name} must be > 0, got {value}")
        if self.lam <= 0:
            raise SolverError(f"lam must be > 0, got {self.lam}")
        if not 0.0 <= self.theta <= 1.0:
            raise SolverError(f"theta must lie in [0, 1], got {self.theta}")
        if self.criterion not in CRITERIA:
            raise SolverError(f"unknown stopping criterion '{self.criterion}'")

    def with_(self, **changes):
        return replace(self, **changes)

    @classmethod
    def from_section(cls, section):
        """Build from a core.config SolverSection"""
        return cls(max_iters=section.max_iters, tol=section.tol, tau=section.tau, sigma=section.sigma,
                   lam=section.lam, theta=section.theta, criterion=section.criterion,
                   strict=section.strict)


@dataclass
class SolverTrace:
    """Per-iteration records plus the final status (running, converged, max_iters, diverged, completed)"""

    method: str = ""
    records: List[dict] = field(default_factory=list)
    status: str = "running"
    thread_count: int = 1

    def record(self, energy=np.nan, gap=np.nan, primal_res=np.nan, dual_res=np.nan, iterate_norm=np.nan):
        row = {
            "iter": len(self.records) + 1,
            "energy": float(energy),
            "gap": float(gap),
            "primal_res": float(primal_res),
            "dual_res": float(dual_res),
            "iterate_norm": float(iterate_norm),
        }
        self.records.append(row)
        return row

    @property
    def iterations(self):
        return len(self.records)

    @property
    def converged(self):
        return self.status == "converged"

    def column(self, name):
        return np.array([row[name] for row in self.records])

    @property
    def energies(self):
        return self.column("energy")

    @property
    def gaps(self):
        return self.column("gap")

    @property
    def last(self):
        return self.records[-1] if self.records else None

    def to_frame(self):
        return pd.DataFrame(self.records, columns=list(TRACE_FIELDS))


def criterion_met(cfg, row, previous_energy):
    """Stopping test for the configured criterion on the latest trace row"""
    if cfg.criterion == "gap":
        return np.isfinite(row["gap"]) and row["gap"] <= cfg.tol
    if cfg.criterion == "energy_delta":
        if previous_energy is None or not np.isfinite(row["energy"]):
            return False
        return abs(row["energy"] - previous_energy) <= cfg.tol * max(1.0, abs(row["energy"]))
    residuals = [row["primal_res"]]
    if np.isfinite(row["dual_res"]):
        residuals.append(row["dual_res"])
    return max(residuals) <= cfg.tol


def finish(trace, cfg, converged, logger, name):
    """Set the final status; raise in strict mode when the cap was hit"""
    trace.status = "converged" if converged else "max_iters"
    if converged:
        logger.debug(f"{name} converged after {trace.iterations} iterations")
        return trace
    message = f"{name} stopped at max_iters={cfg.max_iters} without meeting tol={cfg.tol:g}"
    if cfg.strict:
        raise ConvergenceFailure(message)
    logger.warning(f"⚠️  {message}")
    return trace
