"""
Reconstruction Dispatch

Chooses the solver for a Problem:
    no regularizer (alpha = 0)   identity: y itself; otherwise least squares by CG
    TV, identity operator        PDHG on the ROF form (K = grad, H = fidelity)
    TV, general operator         PDHG with K = (A, grad), J = fidelity (+) alpha TV-norm, H = 0
    other regularizers           forward-backward for l2 data, ADMM otherwise
solver.method overrides the automatic choice.
"""

import numpy as np

from core.errors import ConfigError
from core.logger import ProfessionalLogger
from Module_1_Grid.grid_types import norm
from Module_2_Operators.linear_map import IdentityMap, make_gradient, stack_maps
from Module_3_Convex.moreau import ProxFunctional
from Module_3_Convex.norms import block_functional, group_norm_functional, zero_functional
from Module_4_Fidelity.fidelity import DataTerm, fid_value, fidelity_functional
from Module_5_Solvers.admm import AdmmSolver
from Module_5_Solvers.forward_backward import ForwardBackwardSolver
from Module_5_Solvers.linear_solve import least_squares
from Module_5_Solvers.primal_dual import PrimalDualSolver
from Module_5_Solvers.solver_config import SolverConfig, SolverTrace
from Module_6_Regularizers.regularizer import RegularizerProx, reg_value


class Reconstructor:

    def __init__(self, logger=None, thread_count=1):
        self.logger = logger or ProfessionalLogger.console()
        self.thread_count = thread_count

    def method_for(self, problem, requested):
        R = problem.regularizer
        if R is None:
            return "direct"
        if requested != "auto":
            return requested
        if R.is_tv:
            return "pdhg"
        return "fbs" if problem.fidelity.kind == "l2" else "admm"

    def _direct(self, problem, cfg):
        """alpha = 0: the data itself (identity) or the least-squares solution"""
        trace = SolverTrace(method="direct", thread_count=self.thread_count)
        if isinstance(problem.A, IdentityMap):
            u = np.array(problem.y, dtype=np.float64)
        elif problem.fidelity.kind == "l2":
            u = least_squares(problem.A, problem.y, tol=cfg.inner_tol)
        else:
            raise ConfigError("an unregularized run with a non-identity operator needs l2 fidelity",
                              field="fidelity.kind")
        residual = norm(problem.A.normal(u) - problem.A.adjoint(problem.y))
        trace.record(energy=fid_value(problem.fidelity, problem.A.apply(u)), primal_res=residual, iterate_norm=norm(u))
        trace.status = "converged"
        return u, trace

    def _pdhg(self, problem, cfg):
        R, A, F = problem.regularizer, problem.A, problem.fidelity
        solver = PrimalDualSolver(self.logger, run_id="reconstruction")
        if R.is_tv and isinstance(A, IdentityMap):
            J = group_norm_functional(R.weight, R.tv_kind)
            K = make_gradient(problem.shape, R.spacing)
            u, _, trace = solver.run(J, fidelity_functional(F), K, problem.y, None, cfg,
                                     thread_count=self.thread_count)
            return u, trace

        if cfg.criterion == "gap":
            self.logger.warning("⚠️  no finite gap for this splitting, stopping on the fixed-point residual")
            cfg = cfg.with_(criterion="fixed_point_residual")
        if R.is_tv:
            K = stack_maps([A, make_gradient(problem.shape, R.spacing)])
            J = block_functional([fidelity_functional(F), group_norm_functional(R.weight, R.tv_kind)])
            H = zero_functional()
        else:
            K = A
            J = fidelity_functional(F)
            H = ProxFunctional(value=lambda u: reg_value(R, u), prox=RegularizerProx(R, self.logger),
                               name=R.kind)
        u, _, trace = solver.run(J, H, K, np.zeros(problem.shape), None, cfg, thread_count=self.thread_count)
        return u, trace

    def _fbs(self, problem, cfg):
        R = problem.regularizer
        if not problem.fidelity.smooth:
            raise ConfigError(f"forward-backward needs a smooth fidelity, got {problem.fidelity.kind}",
                              field="solver.method")
        start = problem.A.adjoint(problem.y)
        return ForwardBackwardSolver(self.logger).run(DataTerm(problem.fidelity, problem.A),
                                                      RegularizerProx(R, self.logger), start, cfg,
                                                      reg_value=lambda u: reg_value(R, u),
                                                      thread_count=self.thread_count)

    def _admm(self, problem, cfg):
        R = problem.regularizer
        start = problem.A.adjoint(problem.y)
        u, _, _, trace = AdmmSolver(self.logger).run(DataTerm(problem.fidelity, problem.A),
                                                     RegularizerProx(R, self.logger), start, cfg,
                                                     reg_value=lambda u: reg_value(R, u),
                                                     thread_count=self.thread_count)
        return u, trace

    def reconstruct(self, problem, solver_section):
        cfg = SolverConfig.from_section(solver_section)
        method = self.method_for(problem, solver_section.method)
        self.logger.info(f"🔧 Reconstruction method: {method}")
        if method == "direct":
            return self._direct(problem, cfg)
        if method == "pdhg":
            return self._pdhg(problem, cfg)
        if method == "fbs":
            return self._fbs(problem, cfg)
        return self._admm(problem, cfg)
