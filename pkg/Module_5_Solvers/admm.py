"""
Alternating Direction Method of Multipliers

Scaled-form ADMM for min_u D(Au, y) + R(u) with the splitting u = v:

    u_{k+1} = argmin_u D(Au, y) + lam/2 ||u - (v_k - h_k)||^2
    v_{k+1} = prox_{R/lam}(u_{k+1} + h_k)
    h_{k+1} = h_k + u_{k+1} - v_{k+1}

The u-update is closed form for the identity operator and l2 data, a
gradient solve for KL data and an inner primal-dual solve otherwise (l1
through a blur, say). The v-update only touches R through its prox, which
is where Plug-and-Play substitutes a denoiser.
"""

import numpy as np

from core.errors import InnerSolveFailure
from core.logger import ProfessionalLogger
from Module_1_Grid.grid_types import as_array, norm
from Module_2_Operators.linear_map import IdentityMap
from Module_3_Convex.moreau import ProxFunctional
from Module_4_Fidelity.fidelity import fid_prox, fid_value, fid_gradient, fidelity_functional
from .linear_solve import solve_normal_equations
from .primal_dual import PrimalDualSolver
from .solver_config import SolverConfig, SolverTrace, criterion_met, finish

KL_INNER_MAX_ITERS = 500


class AdmmSolver:

    def __init__(self, logger=None):
        self.logger = logger or ProfessionalLogger.console()
        self._inner_dual = None

    def _kl_update(self, data_term, target, lam, u_start, tol):
        """min_u KL(Au, y) + lam/2 ||u - target||^2 by gradient steps with backtracking
        that keep Au inside the KL domain"""
        A, F = data_term.A, data_term.F

        def objective(u):
            Au = A.apply(u)
            if np.any(Au < 0) or np.any((Au <= 0) & (F.y > 0)):
                return np.inf
            return fid_value(F, Au) + 0.5 * lam * norm(u - target) ** 2

        u = np.array(u_start, dtype=np.float64)
        value = objective(u)
        if not np.isfinite(value):
            u = np.maximum(np.array(target, dtype=np.float64), 1e-8)
            value = objective(u)
            if not np.isfinite(value):
                raise InnerSolveFailure("no feasible start for the KL u-update")

        step = 1.0 / lam
        for _ in range(KL_INNER_MAX_ITERS):
            grad = A.adjoint(fid_gradient(F, A.apply(u))) + lam * (u - target)
            grad_norm = norm(grad)
            if grad_norm <= tol * max(1.0, norm(u)):
                return u
            while True:
                candidate = u - step * grad
                candidate_value = objective(candidate)
                if candidate_value <= value - 0.5 * step * grad_norm ** 2:
                    break
                step *= 0.5
                if step < 1e-16:
                    raise InnerSolveFailure("KL u-update line search failed")
            u, value = candidate, candidate_value
            step *= 2.0
        raise InnerSolveFailure(f"KL u-update did not converge in {KL_INNER_MAX_ITERS} iterations")

    def _primal_dual_update(self, data_term, target, lam, u_start, cfg):
        """min_u D(Au, y) + lam/2 ||u - target||^2 by an inner primal-dual solve, dual warm-started
        across outer iterations"""
        H = ProxFunctional(
            value=lambda u: 0.5 * lam * norm(u - target) ** 2,
            prox=lambda w, tau: (as_array(w) + tau * lam * target) / (1.0 + tau * lam),
            name="admm_coupling",
        )
        inner_cfg = SolverConfig(max_iters=cfg.inner_max_iters, tol=cfg.inner_tol)
        u, self._inner_dual, trace = PrimalDualSolver(self.logger, run_id="admm_inner").run(
            fidelity_functional(data_term.F), H, data_term.A, u_start, self._inner_dual, inner_cfg,
            track_energy=False)
        if not trace.converged:
            self.logger.log_solver_event("admm", "inner_max_iters", {
                'fidelity': data_term.F.kind, 'inner_max_iters': cfg.inner_max_iters,
                'primal_res': trace.last['primal_res'],
            })
        return u

    def _u_update(self, data_term, target, lam, u_start, cfg):
        A, F = data_term.A, data_term.F
        if isinstance(A, IdentityMap):
            return fid_prox(F, target, 1.0 / lam)
        if F.kind == "l2":
            rhs = A.adjoint(F.y) + lam * target
            return solve_normal_equations(A, rhs, lam, x0=u_start, tol=cfg.inner_tol)
        if F.kind == "kl":
            return self._kl_update(data_term, target, lam, u_start, cfg.inner_tol)
        return self._primal_dual_update(data_term, target, lam, u_start, cfg)

    def run(self, data_term, R_prox, u0, cfg=None, reg_value=None, v0=None, h0=None, thread_count=1):
        """data_term: DataTerm(F, A); R_prox(v, t) = prox of t * R. Returns (u, v, h, trace)."""
        cfg = cfg or SolverConfig()
        if cfg.criterion == "gap":
            cfg = cfg.with_(criterion="fixed_point_residual")
        lam = cfg.lam
        self.logger.debug(f"ADMM: lam={lam:g}, fidelity={data_term.F.kind}")

        u = np.array(as_array(u0), dtype=np.float64)
        v = np.array(u if v0 is None else as_array(v0), dtype=np.float64)
        h = np.zeros_like(u) if h0 is None else np.array(as_array(h0), dtype=np.float64)
        trace = SolverTrace(method="admm", thread_count=thread_count)
        self._inner_dual = None
        previous = None

        for _ in range(cfg.max_iters):
            u = self._u_update(data_term, v - h, lam, u, cfg)
            v_next = R_prox(u + h, 1.0 / lam)
            h = h + u - v_next
            primal_res = norm(u - v_next)
            dual_res = lam * norm(v_next - v)
            v = v_next

            energy = data_term.value(u) + (reg_value(u) if reg_value is not None else 0.0)
            row = trace.record(energy=energy, primal_res=primal_res, dual_res=dual_res, iterate_norm=norm(u))
            if criterion_met(cfg, row, previous):
                return u, v, h, finish(trace, cfg, True, self.logger, "ADMM")
            previous = energy

        return u, v, h, finish(trace, cfg, False, self.logger, "ADMM")


def admm(data_term, R_prox, u0, cfg=None, reg_value=None, logger=None):
    return AdmmSolver(logger).run(data_term, R_prox, u0, cfg, reg_value=reg_value)
