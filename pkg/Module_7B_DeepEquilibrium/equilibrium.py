"""
Deep Equilibrium Reconstruction

The reconstruction is the fixed point of
    G(u) = u + eta A*(y - Au) - eta R(u),   R = Id + residual,
where residual = R - Id is epsilon-Lipschitz. With mu = lambda_min(A*A) and
L = lambda_max(A*A), eta < 1 / (L + 1) and epsilon < 1 + mu, G is a
contraction with factor 1 - eta (1 + mu) + eta epsilon. For rank-deficient
A, mu = 0 and the bound becomes 1 - eta + eta epsilon.

Picard iteration measures the contraction factor; Anderson acceleration
(type II) mixes the last m residuals.
"""

import numpy as np
from scipy import linalg

from core.errors import ContractionBoundViolated, DeqError, NotContractive
from core.logger import ProfessionalLogger
from Module_1_Grid.grid_types import as_array, norm
from Module_2_Operators.spectrum import smallest_eigenvalue
from Module_5_Solvers.solver_config import SolverConfig, SolverTrace, finish

# consecutive step ratios >= 1 before NotContractive
NON_CONTRACTIVE_WINDOW = 10
CONTRACTION_TOL = 1e-6
# ratios of steps below this (relative to ||u||) are rounding noise and not measured
RATIO_FLOOR = 1e-8
ANDERSON_REGULARIZATION = 1e-10
ANDERSON_MAX_MEMORY = 10


class DeqOperator:

    def __init__(self, A, y, eta, residual):
        """residual: LipschitzMap for R - Id; its constant is epsilon"""
        if eta <= 0:
            raise DeqError(f"step eta must be > 0, got {eta}")
        self.A = A
        self.y = np.asarray(y)
        self.eta = float(eta)
        self.residual = residual
        self.L = float(A.norm_estimate ** 2)
        if self.eta >= 1.0 / (self.L + 1.0):
            raise DeqError(f"eta={eta:g} must be below 1/(L+1) = {1.0 / (self.L + 1.0):.6g}")
        self.mu = smallest_eigenvalue(A)

    @property
    def epsilon(self):
        return self.residual.constant

    @property
    def contraction_bound(self):
        """1 - eta (1 + mu) + eta epsilon; meaningful when epsilon < 1 + mu"""
        return 1.0 - self.eta * (1.0 + self.mu) + self.eta * self.epsilon

    @property
    def certified_contractive(self):
        return self.epsilon < 1.0 + self.mu

    def rmap(self, u):
        return u + self.residual(u)

    def __call__(self, u):
        A, eta = self.A, self.eta
        return u + eta * A.adjoint(self.y - A.apply(u)) - eta * self.rmap(u)


class DeqSolver:

    def __init__(self, logger=None, run_id="deq"):
        self.logger = logger or ProfessionalLogger.console()
        self.run_id = run_id

    def picard(self, op, u0, tol=1e-10, max_iters=1000):
        """Returns (u, gamma_est, trace); gamma_est is the largest measured step ratio"""
        cfg = SolverConfig(max_iters=max_iters, tol=tol)
        u = np.array(as_array(u0), dtype=np.float64)
        trace = SolverTrace(method="deq_picard")
        previous_step = None
        gamma_est = 0.0
        expanding = 0

        for _ in range(max_iters):
            u_next = op(u)
            step = norm(u_next - u)
            trace.record(primal_res=step, iterate_norm=norm(u_next))

            if previous_step is not None and previous_step > 0:
                ratio = step / previous_step
                expanding = expanding + 1 if ratio >= 1.0 else 0
                if expanding >= NON_CONTRACTIVE_WINDOW:
                    trace.status = "diverged"
                    raise NotContractive(f"step ratio >= 1 for {NON_CONTRACTIVE_WINDOW} consecutive iterations "
                                         f"(last {ratio:.4g})")
                if previous_step >= RATIO_FLOOR * max(1.0, norm(u)):
                    gamma_est = max(gamma_est, ratio)

            u = u_next
            previous_step = step
            if step <= tol:
                self._check_bound(op, gamma_est)
                return u, gamma_est, finish(trace, cfg, True, self.logger, "DEQ Picard")

        return u, gamma_est, finish(trace, cfg, False, self.logger, "DEQ Picard")

    def _check_bound(self, op, gamma_est):
        if not op.certified_contractive:
            return
        report = {"gamma_est": gamma_est, "bound": op.contraction_bound, "eta": op.eta,
                  "mu": op.mu, "epsilon": op.epsilon}
        self.logger.log_certificate_report("contraction", self.run_id, report)
        if gamma_est > op.contraction_bound + CONTRACTION_TOL:
            raise ContractionBoundViolated(f"measured contraction {gamma_est:.6g} exceeds the bound "
                                           f"{op.contraction_bound:.6g}")

    def anderson(self, op, u0, memory=5, tol=1e-10, max_iters=1000):
        """Type-II Anderson acceleration; returns (u, trace)"""
        if not 1 <= memory <= ANDERSON_MAX_MEMORY:
            raise DeqError(f"Anderson memory must lie in [1, {ANDERSON_MAX_MEMORY}], got {memory}")
        cfg = SolverConfig(max_iters=max_iters, tol=tol)
        x = np.array(as_array(u0), dtype=np.float64).ravel()
        shape = np.shape(as_array(u0))
        trace = SolverTrace(method="deq_anderson")
        g_history, f_history = [], []
        fallbacks = 0

        for k in range(max_iters):
            g = np.asarray(op(x.reshape(shape)), dtype=np.float64).ravel()
            f = g - x
            residual = float(np.linalg.norm(f))
            trace.record(primal_res=residual, iterate_norm=float(np.linalg.norm(g)))
            if residual <= tol:
                if fallbacks:
                    self.logger.debug(f"Anderson used {fallbacks} Picard fallback steps")
                return g.reshape(shape), finish(trace, cfg, True, self.logger, "DEQ Anderson")

            g_history.append(g)
            f_history.append(f)
            if len(f_history) > memory + 1:
                g_history.pop(0)
                f_history.pop(0)

            if len(f_history) == 1:
                x = g
                continue

            dF = np.column_stack([b - a for a, b in zip(f_history, f_history[1:])])
            dG = np.column_stack([b - a for a, b in zip(g_history, g_history[1:])])
            gram = dF.T @ dF
            scale = float(np.trace(gram))
            try:
                if scale <= 0 or not np.isfinite(scale):
                    raise linalg.LinAlgError("zero residual differences")
                weights = linalg.solve(gram + ANDERSON_REGULARIZATION * scale * np.eye(gram.shape[0]),
                                       dF.T @ f, assume_a="pos")
                if not np.all(np.isfinite(weights)):
                    raise linalg.LinAlgError("non-finite mixing weights")
                x = g - dG @ weights
            except linalg.LinAlgError as e:
                fallbacks += 1
                self.logger.log_solver_event(self.run_id, "anderson_fallback",
                                             {"iteration": k + 1, "reason": str(e), "memory": len(f_history) - 1})
                x = g
                g_history, f_history = [g_history[-1]], [f_history[-1]]

        return x.reshape(shape), finish(trace, cfg, False, self.logger, "DEQ Anderson")


def deq_solve(op, u0, tol=1e-10, max_iters=1000, logger=None):
    return DeqSolver(logger).picard(op, u0, tol, max_iters)


def anderson_accelerate(op, u0, memory=5, tol=1e-10, max_iters=1000, logger=None):
    return DeqSolver(logger).anderson(op, u0, memory, tol, max_iters)
