"""
Regularization Functionals

R(u) = alpha * base(u) for
    tikhonov_l2    1/2 ||u||^2
    tikhonov_grad  1/2 ||grad u||^2
    tv_iso         sum |grad u|_2
    tv_aniso       sum |px| + |py|
    proto_dist     min_m ||u - m||_2 + rho0 ||u||^2 over a finite prototype set

with values, subgradient selections and proxes. TV values are plain pixel
sums; the grid spacing enters through the differences only. The TV prox
runs PDHG on the ROF problem and returns v - grad* p from the dual iterate.
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Tuple

import numpy as np

from core.errors import RegularizerError, Unsupported
from core.logger import ProfessionalLogger
from Module_1_Grid.grid_types import as_array, norm
from Module_1_Grid.differential import gradient, divergence
from Module_1_Grid.image_io import read_image
from Module_3_Convex.norms import mixed_norm
from Module_5_Solvers.linear_solve import solve_spd
from Module_5_Solvers.primal_dual import PrimalDualSolver, rof_problem
from Module_5_Solvers.solver_config import SolverConfig

REGULARIZER_KINDS = ("tikhonov_l2", "tikhonov_grad", "tv_iso", "tv_aniso", "proto_dist")

# |grad u| below this counts as a flat pixel for the TV subgradient selection
TV_EPSILON = 1e-8

TV_PROX_CONFIG = SolverConfig(max_iters=20000, tol=1e-10, criterion="fixed_point_residual", strict=True)


@dataclass(frozen=True)
class Regularizer:
    kind: str
    weight: float = 1.0
    prototypes: Tuple[np.ndarray, ...] = field(default_factory=tuple)
    rho0: float = 0.0
    spacing: float = 1.0

    def __post_init__(self):
        if self.kind not in REGULARIZER_KINDS:
            raise RegularizerError(f"unknown regularizer kind '{self.kind}'")
        if not np.isfinite(self.weight) or self.weight < 0:
            raise RegularizerError(f"weight must be >= 0, got {self.weight}")
        if self.rho0 < 0:
            raise RegularizerError(f"rho0 must be >= 0, got {self.rho0}")
        prototypes = tuple(np.array(as_array(m), dtype=np.float64) for m in self.prototypes)
        if self.kind == "proto_dist":
            if not prototypes:
                raise RegularizerError("proto_dist needs at least one prototype")
            if len({m.shape for m in prototypes}) != 1:
                raise RegularizerError("prototypes must share one shape")
        for m in prototypes:
            m.setflags(write=False)
        object.__setattr__(self, "prototypes", prototypes)

    @property
    def tv_kind(self):
        return "iso" if self.kind == "tv_iso" else "aniso"

    @property
    def is_tv(self):
        return self.kind in ("tv_iso", "tv_aniso")


@dataclass(frozen=True)
class SubgradientResult:
    """One element of the subdifferential; smooth is False where the selection was made at a kink"""

    value: np.ndarray
    smooth: np.ndarray

    @property
    def all_smooth(self):
        return bool(np.all(self.smooth))


def nearest_prototype(R, u):
    """(index, distance) of the nearest prototype; ties go to the lowest index"""
    distances = np.array([norm(u - m) for m in R.prototypes])
    index = int(np.argmin(distances))
    return index, float(distances[index])


def reg_value(R, u):
    u = np.asarray(as_array(u), dtype=np.float64)
    if R.kind == "tikhonov_l2":
        base = 0.5 * norm(u) ** 2
    elif R.kind == "tikhonov_grad":
        base = 0.5 * norm(gradient(u, R.spacing)) ** 2
    elif R.is_tv:
        base = mixed_norm(gradient(u, R.spacing), R.tv_kind)
    else:
        base = nearest_prototype(R, u)[1] + R.rho0 * norm(u) ** 2
    return R.weight * base


def reg_subgradient(R, u):
    """Element of the subdifferential of R at u (gradient where R is smooth)"""
    u = np.asarray(as_array(u), dtype=np.float64)
    h = R.spacing
    if R.kind == "tikhonov_l2":
        return SubgradientResult(R.weight * u, np.ones(u.shape, dtype=bool))
    if R.kind == "tikhonov_grad":
        return SubgradientResult(-R.weight * divergence(gradient(u, h), h), np.ones(u.shape, dtype=bool))
    if R.kind == "proto_dist":
        raise Unsupported("proto_dist has no subgradient selection")

    p = gradient(u, h)
    # components fixed to 0 by the Neumann boundary never make R nonsmooth
    live = np.ones(p.shape, dtype=bool)
    live[0, :, -1] = False
    live[1, -1, :] = False
    if R.kind == "tv_iso":
        magnitude = np.sqrt(p[0] ** 2 + p[1] ** 2)
        flat = magnitude < TV_EPSILON
        smooth = ~flat | ~np.any(live, axis=0)
        direction = np.where(flat, 0.0, p / np.where(flat, 1.0, magnitude))
    else:
        flat = np.abs(p) < TV_EPSILON
        smooth = np.all(~flat | ~live, axis=0)
        direction = np.where(flat, 0.0, np.sign(p))
    # d/du sum |grad u| = grad* (grad u / |grad u|) = -div(...)
    return SubgradientResult(-R.weight * divergence(direction, h), smooth)


def _tv_prox(R, v, tau, p0=None, logger=None):
    """(prox, dual) of tau * alpha * TV at v"""
    J, H, K = rof_problem(v, R.weight * tau, R.tv_kind, R.spacing)
    solver = PrimalDualSolver(logger, run_id="tv_prox")
    _, p, _ = solver.run(J, H, K, v, p0, TV_PROX_CONFIG, track_energy=False)
    return v - K.adjoint(p), p


def _proto_prox(R, v, tau):
    t = R.weight * tau
    if R.rho0 > 0:
        shrink = 1.0 + 2.0 * t * R.rho0
        v, t = v / shrink, t / shrink
    index, distance = nearest_prototype(R, v)
    target = R.prototypes[index]
    if distance <= t:
        return np.array(target)
    return v + (t / distance) * (target - v)


def reg_prox(R, v, tau, logger=None):
    """prox of tau * R at v"""
    if tau <= 0:
        raise RegularizerError(f"prox step must be > 0, got {tau}")
    v = np.asarray(as_array(v), dtype=np.float64)
    if R.weight == 0:
        return np.array(v)
    if R.kind == "tikhonov_l2":
        return v / (1.0 + R.weight * tau)
    if R.kind == "tikhonov_grad":
        t, h = R.weight * tau, R.spacing
        return solve_spd(lambda x: x - t * divergence(gradient(x, h), h), v, x0=v, tol=1e-10)
    if R.is_tv:
        return _tv_prox(R, v, tau, logger=logger)[0]
    return _proto_prox(R, v, tau)


class RegularizerProx:
    """prox of tau * R as a callable (v, tau) -> array, warm-starting the TV dual across calls"""

    def __init__(self, R, logger=None):
        self.R = R
        self.logger = logger or ProfessionalLogger.console()
        self._dual = None
        self.calls = 0

    def __call__(self, v, tau):
        self.calls += 1
        if not self.R.is_tv or self.R.weight == 0:
            return reg_prox(self.R, v, tau, self.logger)
        if tau <= 0:
            raise RegularizerError(f"prox step must be > 0, got {tau}")
        v = np.asarray(as_array(v), dtype=np.float64)
        dual = self._dual if self._dual is not None and self._dual.shape == (2,) + v.shape else None
        u, self._dual = _tv_prox(self.R, v, tau, dual, self.logger)
        return u


def load_prototypes(directory):
    """All .pgm / .csv images of a directory, sorted by file name"""
    directory = Path(directory)
    if not directory.is_dir():
        raise RegularizerError(f"prototype directory not found: {directory}")
    paths = sorted(p for p in directory.iterdir() if p.suffix.lower() in (".pgm", ".csv"))
    if not paths:
        raise RegularizerError(f"no .pgm or .csv prototypes in {directory}")
    return tuple(read_image(p).data for p in paths)
