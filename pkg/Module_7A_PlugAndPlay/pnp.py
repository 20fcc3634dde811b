"""
Plug-and-Play Reconstruction

The prox step of ADMM / forward-backward is replaced by the filtered
denoiser g_tau(D). With ADMM parameter lam the loop solves
    min_u 1/2 ||Au - y||^2 + lam * tau * J(u)
and forward-backward with step s solves the same problem with tau / s in
place of lam * tau.
"""

from Module_2_Operators.linear_map import zero_fill
from Module_4_Fidelity.fidelity import Fidelity, DataTerm
from Module_5_Solvers.admm import AdmmSolver
from Module_5_Solvers.forward_backward import ForwardBackwardSolver
from Module_5_Solvers.solver_config import SolverConfig
from .denoiser import denoiser_regularizer_value
from .spectral_filter import apply_spectral_filter


def _filtered_prox(D, f):
    filtered = apply_spectral_filter(D, f)
    return lambda v, _t: filtered.apply(v)


def _regularizer_energy(D, f, scale):
    if f.family != "canonical" or D.lower_bound <= 0:
        return None
    return lambda u: scale * f.tau * denoiser_regularizer_value(D, u)


def pnp_admm(A, y, D, f, cfg=None, logger=None, u0=None, thread_count=1):
    """PnP-ADMM; returns (u, trace). The fixed point carries primal/dual residuals in the trace."""
    cfg = cfg or SolverConfig()
    data_term = DataTerm(Fidelity("l2", y), A)
    start = zero_fill(A, y) if u0 is None else u0
    u, _, _, trace = AdmmSolver(logger).run(data_term, _filtered_prox(D, f), start, cfg,
                                            reg_value=_regularizer_energy(D, f, cfg.lam),
                                            thread_count=thread_count)
    trace.method = "pnp_admm"
    return u, trace


def pnp_fbs(A, y, D, f, cfg=None, logger=None, u0=None, thread_count=1):
    """PnP forward-backward: u <- g_tau(D)(u - s A*(Au - y)), s = cfg.tau or 1/||A||^2"""
    cfg = cfg or SolverConfig()
    data_term = DataTerm(Fidelity("l2", y), A)
    step = cfg.tau if cfg.tau is not None else 1.0 / data_term.lipschitz
    start = zero_fill(A, y) if u0 is None else u0
    u, trace = ForwardBackwardSolver(logger).run(data_term, _filtered_prox(D, f), start, cfg,
                                                 reg_value=_regularizer_energy(D, f, 1.0 / step),
                                                 thread_count=thread_count)
    trace.method = "pnp_fbs"
    return u, trace
