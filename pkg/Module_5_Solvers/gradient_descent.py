"""
Gradient Descent and Proximal-Point Descent

Explicit steps u <- u - tau * grad f(u), and the implicit counterpart
u <- prox_{tau J}(u) = u - tau * grad J_tau(u) on the Moreau-Yosida envelope.
"""

import numpy as np

from core.errors import Diverged, SolverError
from core.logger import ProfessionalLogger
from Module_1_Grid.grid_types import as_array, norm
from .solver_config import SolverConfig, SolverTrace, DIVERGENCE_WINDOW, finish


class GradientDescentSolver:
    """u_{k+1} = u_k - tau * f_grad(u_k), stopped on ||u_{k+1} - u_k|| <= tol"""

    def __init__(self, logger=None):
        self.logger = logger or ProfessionalLogger.console()

    def run(self, f_grad, u0, cfg=None, energy=None, lipschitz=None, thread_count=1):
        cfg = cfg or SolverConfig()
        tau = cfg.tau
        if tau is None:
            if not lipschitz:
                raise SolverError("gradient descent needs cfg.tau or a Lipschitz constant")
            tau = 1.0 / lipschitz
        self.logger.debug(f"Gradient descent: tau={tau:g}, max_iters={cfg.max_iters}")

        u = np.array(as_array(u0), dtype=np.float64)
        trace = SolverTrace(method="gradient_descent", thread_count=thread_count)
        previous = energy(u) if energy is not None else None
        increases = 0

        for _ in range(cfg.max_iters):
            u_next = u - tau * f_grad(u)
            step = norm(u_next - u)
            u = u_next
            value = energy(u) if energy is not None else np.nan
            trace.record(energy=value, primal_res=step, iterate_norm=norm(u))

            if energy is not None:
                increases = increases + 1 if value > previous else 0
                previous = value
                if increases >= DIVERGENCE_WINDOW:
                    trace.status = "diverged"
                    raise Diverged(f"energy increased for {DIVERGENCE_WINDOW} consecutive iterations")
            if step <= cfg.tol:
                return u, finish(trace, cfg, True, self.logger, "Gradient descent")

        return u, finish(trace, cfg, False, self.logger, "Gradient descent")


class ProximalPointSolver:
    """u_{k+1} = prox_{tau J}(u_k); residual ||u_{k+1} - u_k|| / tau = ||grad J_tau(u_k)||"""

    def __init__(self, logger=None):
        self.logger = logger or ProfessionalLogger.console()

    def run(self, J_prox, u0, cfg=None, energy=None, thread_count=1):
        cfg = cfg or SolverConfig()
        if cfg.tau is None:
            raise SolverError("proximal point descent needs cfg.tau")
        tau = cfg.tau

        u = np.array(as_array(u0), dtype=np.float64)
        trace = SolverTrace(method="proximal_point", thread_count=thread_count)
        for _ in range(cfg.max_iters):
            u_next = J_prox(u, tau)
            residual = norm(u_next - u) / tau
            u = u_next
            trace.record(energy=energy(u) if energy is not None else np.nan,
                         primal_res=residual, iterate_norm=norm(u))
            if residual <= cfg.tol:
                return u, finish(trace, cfg, True, self.logger, "Proximal point")

        return u, finish(trace, cfg, False, self.logger, "Proximal point")


def gradient_descent(f_grad, u0, cfg=None, energy=None, lipschitz=None, logger=None):
    return GradientDescentSolver(logger).run(f_grad, u0, cfg, energy=energy, lipschitz=lipschitz)


def proximal_point(J_prox, u0, cfg=None, energy=None, logger=None):
    return ProximalPointSolver(logger).run(J_prox, u0, cfg, energy=energy)
