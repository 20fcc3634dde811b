"""
Forward-Backward Splitting

u_{k+1} = prox_{tau J}(u_k - tau * grad H(u_k)) for a smooth H with
Lipschitz gradient L and a prox-friendly J; converges for 0 < tau <= 1/L.
"""

import numpy as np

from core.errors import Diverged, SolverError, StepSizeViolation
from core.logger import ProfessionalLogger
from Module_1_Grid.grid_types import as_array, norm
from .solver_config import SolverConfig, SolverTrace, DIVERGENCE_WINDOW, criterion_met, finish


class ForwardBackwardSolver:

    def __init__(self, logger=None):
        self.logger = logger or ProfessionalLogger.console()

    def run(self, smooth, R_prox, u0, cfg=None, reg_value=None, thread_count=1):
        """smooth: object with value(u), gradient(u) and lipschitz (e.g. a DataTerm).
        R_prox(v, tau): prox of tau * J. reg_value(u): J(u), optional (energy only).
        """
        cfg = cfg or SolverConfig()
        if cfg.criterion == "gap":
            # no dual iterate, so no gap
            cfg = cfg.with_(criterion="fixed_point_residual")
        lipschitz = smooth.lipschitz
        if cfg.tau is None:
            if not np.isfinite(lipschitz) or lipschitz <= 0:
                raise SolverError("forward-backward needs cfg.tau when the gradient is not Lipschitz")
            tau = 1.0 / lipschitz
        else:
            tau = cfg.tau
            if tau * lipschitz > 1.0 + 1e-12:
                raise StepSizeViolation(f"tau * L = {tau * lipschitz:.6g} exceeds 1")
        self.logger.debug(f"Forward-backward: tau={tau:g}, L={lipschitz:g}")

        def energy(u):
            return smooth.value(u) + (reg_value(u) if reg_value is not None else 0.0)

        u = np.array(as_array(u0), dtype=np.float64)
        trace = SolverTrace(method="forward_backward", thread_count=thread_count)
        previous = energy(u)
        increases = 0

        for _ in range(cfg.max_iters):
            u_next = R_prox(u - tau * smooth.gradient(u), tau)
            residual = norm(u_next - u) / tau
            u = u_next
            value = energy(u)
            row = trace.record(energy=value, primal_res=residual, iterate_norm=norm(u))

            increases = increases + 1 if value > previous + 1e-12 * max(1.0, abs(previous)) else 0
            if increases >= DIVERGENCE_WINDOW:
                trace.status = "diverged"
                raise Diverged(f"energy increased for {DIVERGENCE_WINDOW} consecutive iterations")
            if criterion_met(cfg, row, previous):
                return u, finish(trace, cfg, True, self.logger, "Forward-backward")
            previous = value

        return u, finish(trace, cfg, False, self.logger, "Forward-backward")


def forward_backward(smooth, R_prox, u0, cfg=None, reg_value=None, logger=None):
    return ForwardBackwardSolver(logger).run(smooth, R_prox, u0, cfg, reg_value=reg_value)
