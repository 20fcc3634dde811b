"""
Module_5_Solvers

Iterative schemes for VariPro: gradient descent, proximal-point descent,
forward-backward splitting, PDHG with primal-dual gap, and ADMM, plus the
conjugate-gradient wrapper used by inner solves.
"""

from .solver_config import SolverConfig, SolverTrace, CRITERIA, TRACE_FIELDS
from .linear_solve import solve_spd, solve_normal_equations, least_squares
from .gradient_descent import GradientDescentSolver, ProximalPointSolver, gradient_descent, proximal_point
from .forward_backward import ForwardBackwardSolver, forward_backward
from .primal_dual import PrimalDualSolver, pdhg, rof_problem
from .admm import AdmmSolver, admm

__all__ = [
    'SolverConfig', 'SolverTrace', 'CRITERIA', 'TRACE_FIELDS',
    'solve_spd', 'solve_normal_equations', 'least_squares',
    'GradientDescentSolver', 'ProximalPointSolver', 'gradient_descent', 'proximal_point',
    'ForwardBackwardSolver', 'forward_backward',
    'PrimalDualSolver', 'pdhg', 'rof_problem',
    'AdmmSolver', 'admm',
]
