"""
Primal-Dual Hybrid Gradient

Saddle-point iteration for min_u J(Au) + H(u):

    u_{k+1} = prox_{tau H}(u_k - tau A* p_k)
    p_{k+1} = prox_{sigma J*}(p_k + sigma A(u_{k+1} + theta (u_{k+1} - u_k)))

with tau * sigma * ||A||^2 <= 1. The primal-dual gap
J(Au) + H(u) + J*(p) + H*(-A*p) is reported whenever both conjugates are
known. Dual variables may be tuples when A is a stacked operator.
"""

import numpy as np

from core.errors import StepSizeViolation
from core.logger import ProfessionalLogger
from Module_1_Grid.grid_types import as_array, norm
from Module_2_Operators.linear_map import NORM_SAFETY, make_gradient
from Module_3_Convex.norms import group_norm_functional
from Module_4_Fidelity.fidelity import Fidelity, fidelity_functional
from .solver_config import SolverConfig, SolverTrace, criterion_met, finish


def _axpy(a, x, y):
    """y + a * x for arrays or tuples of arrays"""
    if isinstance(x, tuple):
        return tuple(_axpy(a, xi, yi) for xi, yi in zip(x, y))
    return y + a * x


def _copy(x):
    if isinstance(x, tuple):
        return tuple(_copy(xi) for xi in x)
    return np.array(x)


def _scale(a, x):
    if isinstance(x, tuple):
        return tuple(_scale(a, xi) for xi in x)
    return a * x


class PrimalDualSolver:

    def __init__(self, logger=None, run_id="pdhg"):
        self.logger = logger or ProfessionalLogger.console()
        self.run_id = run_id

    def step_sizes(self, A, cfg):
        """(tau, sigma) satisfying tau * sigma * ||A||^2 <= 1"""
        L = A.norm_estimate
        if L == 0:
            return cfg.tau or 1.0, cfg.sigma or 1.0
        tau, sigma = cfg.tau, cfg.sigma
        if tau is None and sigma is None:
            tau = sigma = 1.0 / (L * np.sqrt(NORM_SAFETY))
        elif sigma is None:
            sigma = 1.0 / (tau * L ** 2 * NORM_SAFETY)
        elif tau is None:
            tau = 1.0 / (sigma * L ** 2 * NORM_SAFETY)

        product = tau * sigma * L ** 2
        if product > 1.0 + 1e-12:
            if cfg.strict:
                raise StepSizeViolation(f"tau * sigma * ||A||^2 = {product:.6g} exceeds 1")
            scale = 1.0 / np.sqrt(product * NORM_SAFETY)
            self.logger.log_solver_event(self.run_id, "step_rescale", {
                'tau': tau, 'sigma': sigma, 'norm_estimate': L, 'scale': scale,
            })
            tau, sigma = tau * scale, sigma * scale
        return tau, sigma

    def run(self, J, H, A, u0, p0=None, cfg=None, track_energy=True, thread_count=1):
        """J, H: ProxFunctional. Returns (u, p, trace)."""
        cfg = cfg or SolverConfig()
        track_energy = track_energy or cfg.criterion in ("gap", "energy_delta")
        tau, sigma = self.step_sizes(A, cfg)
        theta = cfg.theta
        with_gap = J.has_conjugate and H.has_conjugate
        if cfg.criterion == "gap" and not with_gap:
            self.logger.warning("⚠️ PDHG: no closed-form conjugates, stopping on the fixed-point residual instead of the gap")
            cfg = cfg.with_(criterion="fixed_point_residual")
        self.logger.debug(f"PDHG: tau={tau:g}, sigma={sigma:g}, theta={theta:g}, criterion={cfg.criterion}")

        u = np.array(as_array(u0), dtype=np.float64)
        p = A.zeros_range() if p0 is None else _copy(p0)
        adjoint_p = A.adjoint(p)
        trace = SolverTrace(method="pdhg", thread_count=thread_count)
        previous = None

        for _ in range(cfg.max_iters):
            u_next = H.prox(u - tau * adjoint_p, tau)
            u_bar = u_next + theta * (u_next - u)
            p_next = J.dual_prox(_axpy(sigma, A.apply(u_bar), p), sigma)
            adjoint_next = A.adjoint(p_next)

            primal_res = norm(u_next - u) / tau
            dual_res = norm(_axpy(-1.0, p, p_next)) / sigma
            u, p, adjoint_p = u_next, p_next, adjoint_next

            energy = gap = np.nan
            if track_energy:
                energy = J.value(A.apply(u)) + H.value(u)
                if with_gap:
                    dual = J.conj_value(p) + H.conj_value(_scale(-1.0, adjoint_p))
                    total = energy + dual
                    gap = total if np.isfinite(total) else np.nan

            row = trace.record(energy=energy, gap=gap, primal_res=primal_res, dual_res=dual_res,
                               iterate_norm=norm(u))
            if criterion_met(cfg, row, previous):
                return u, p, finish(trace, cfg, True, self.logger, "PDHG")
            previous = energy

        return u, p, finish(trace, cfg, False, self.logger, "PDHG")


def pdhg(J, H, A, u0, p0=None, cfg=None, logger=None, track_energy=True):
    return PrimalDualSolver(logger).run(J, H, A, u0, p0, cfg, track_energy=track_energy)


def rof_problem(y, alpha, kind="iso", spacing=1.0):
    """(J, H, K) of the ROF saddle problem: J = alpha * TV-norm, H = 1/2 ||u - y||^2, K = gradient"""
    y = np.asarray(as_array(y), dtype=np.float64)
    J = group_norm_functional(alpha, kind)
    H = fidelity_functional(Fidelity("l2", y))
    return J, H, make_gradient(y.shape, spacing)
