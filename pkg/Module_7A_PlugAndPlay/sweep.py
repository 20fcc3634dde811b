"""
Convergent Regularization Sweep

For decreasing noise levels delta the data y_delta = A u_true + n with
||n|| ~ delta is reconstructed by PnP-ADMM at tau = tau_rule(delta), and the
error against the J-minimizing least-squares solution u_dagger is recorded.
A parameter rule is convergent when that error goes to 0 with delta.

u_dagger comes from a dense oracle: A as an explicit matrix, its pseudoinverse
solution, then the J-minimal correction inside the null space of A.
"""

from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pandas as pd
from scipy import linalg
from tqdm import tqdm

from core.errors import OracleUnavailable, VariProError
from core.logger import ProfessionalLogger
from Module_1_Grid.grid_types import as_array, norm
from Module_1_Grid.noise import SplitMix64
from Module_5_Solvers.solver_config import SolverConfig
from .pnp import pnp_admm
from .spectral_filter import SpectralFilter

SWEEP_COLUMNS = ("delta", "tau", "err_vs_udagger", "err_vs_utrue", "iters")
ORACLE_MAX_PIXELS = 64 * 64

# monotone flag: per-level slack and required overall decrease
STEP_SLACK = 1.05
OVERALL_DECREASE = 0.95

SWEEP_SOLVER_CONFIG = SolverConfig(max_iters=3000, tol=1e-9, criterion="fixed_point_residual")


def linear_rule(c):
    """tau(delta) = c * delta"""
    return lambda delta: c * delta


def level_seed(seed, index):
    """Independent noise stream per sweep level"""
    return (int(seed) * 0x9E3779B1 + 0x632BE5AB * (index + 1)) & ((1 << 64) - 1)


def _real_rows(values):
    values = np.asarray(values).ravel()
    if np.iscomplexobj(values):
        return np.concatenate([values.real, values.imag])
    return values.astype(np.float64)


def operator_matrix(A):
    """A as a dense real matrix on the flattened grid (complex ranges split into real and imaginary rows)"""
    n = int(np.prod(A.domain_shape))
    if n > ORACLE_MAX_PIXELS:
        raise OracleUnavailable(f"dense oracle limited to {ORACLE_MAX_PIXELS} pixels, got {n}")
    basis = np.zeros(A.domain_shape)
    columns = []
    for j in range(n):
        basis.flat[j] = 1.0
        columns.append(_real_rows(A.apply(basis)))
        basis.flat[j] = 0.0
    return np.column_stack(columns)


def minimum_regularizer_solution(A, y, D):
    """u_dagger = argmin J(u) over the least-squares solutions of Au = y"""
    M = operator_matrix(A)
    U, s, Vt = linalg.svd(M, full_matrices=True)
    rank = int(np.sum(s > s[0] * max(M.shape) * np.finfo(np.float64).eps)) if s.size else 0
    coefficients = (U[:, :rank].T @ _real_rows(y)) / s[:rank]
    u_ls = Vt[:rank].T @ coefficients

    null_basis = Vt[rank:].T
    if null_basis.shape[1] == 0:
        return u_ls.reshape(A.domain_shape)

    shape = A.domain_shape
    W_null = np.column_stack([D.apply_inverse_minus_identity(c.reshape(shape)).ravel() for c in null_basis.T])
    gram = null_basis.T @ W_null
    rhs = -W_null.T @ u_ls
    z = linalg.lstsq(0.5 * (gram + gram.T), rhs)[0]
    return (u_ls + null_basis @ z).reshape(shape)


def _check_levels(delta_levels):
    levels = [float(d) for d in delta_levels]
    if not levels:
        raise VariProError("sweep needs at least one noise level")
    for i, d in enumerate(levels):
        if d < 0 or (d == 0 and i != len(levels) - 1):
            raise VariProError("noise levels must be > 0; only the last level may be 0")
    if any(b >= a for a, b in zip(levels, levels[1:])):
        raise VariProError("noise levels must be strictly decreasing")
    return levels


def noisy_data(A, u_true, delta, seed):
    """A u_true + n, n Gaussian with standard deviation delta / sqrt(m) per real entry"""
    exact = A.apply(u_true)
    if delta == 0:
        return exact
    stream = SplitMix64(seed)
    m = exact.size
    if np.iscomplexobj(exact):
        z = stream.normal(2 * m)
        noise = (z[:m] + 1j * z[m:]) * (delta / np.sqrt(2 * m))
    else:
        noise = stream.normal(m) * (delta / np.sqrt(m))
    return exact + noise.reshape(exact.shape)


def sweep_is_monotone(table):
    """Every step within STEP_SLACK and, from two levels on, the last error below OVERALL_DECREASE times the first"""
    column = "err_vs_udagger" if "err_vs_udagger" in table.columns else "err_vs_utrue"
    errors = table[column].to_numpy()
    if errors.size <= 1:
        return True
    steps_ok = bool(np.all(errors[1:] <= STEP_SLACK * errors[:-1]))
    return steps_ok and bool(errors[-1] <= OVERALL_DECREASE * errors[0])


class ConvergenceSweep:

    def __init__(self, logger=None, thread_count=1, progress=True):
        self.logger = logger or ProfessionalLogger.console()
        self.thread_count = max(1, int(thread_count))
        self.progress = progress

    def _level(self, A, u_true, D, tau_rule, u_dagger, cfg, seed, index, delta):
        y = noisy_data(A, u_true, delta, level_seed(seed, index))
        tau = float(tau_rule(delta))
        u, trace = pnp_admm(A, y, D, SpectralFilter(tau), cfg, logger=self.logger,
                            thread_count=self.thread_count)
        row = {"delta": delta, "tau": tau}
        if u_dagger is not None:
            row["err_vs_udagger"] = norm(u - u_dagger)
        row["err_vs_utrue"] = norm(u - u_true)
        row["iters"] = trace.iterations
        return row

    def run(self, A, u_true, D, tau_rule, delta_levels, seed=0, cfg=None):
        levels = _check_levels(delta_levels)
        cfg = cfg or SWEEP_SOLVER_CONFIG
        u_true = np.asarray(as_array(u_true), dtype=np.float64)

        try:
            u_dagger = minimum_regularizer_solution(A, A.apply(u_true), D)
        except OracleUnavailable as e:
            self.logger.warning(f"⚠️  {e}; reporting errors against the true image only")
            u_dagger = None

        def task(item):
            index, delta = item
            return self._level(A, u_true, D, tau_rule, u_dagger, cfg, seed, index, delta)

        items = list(enumerate(levels))
        bar = dict(total=len(items), desc="Sweep levels", disable=not self.progress)
        if self.thread_count > 1 and len(items) > 1:
            with ThreadPoolExecutor(max_workers=min(self.thread_count, len(items))) as executor:
                rows = list(tqdm(executor.map(task, items), **bar))
        else:
            rows = [task(item) for item in tqdm(items, **bar)]

        columns = [c for c in SWEEP_COLUMNS if u_dagger is not None or c != "err_vs_udagger"]
        table = pd.DataFrame(rows, columns=columns)
        self.logger.info(f"📋 Sweep over {len(levels)} levels: monotone={sweep_is_monotone(table)}")
        return table


def convergence_sweep(A, u_true, D, tau_rule, delta_levels, seed=0, cfg=None, logger=None,
                      thread_count=1, progress=False):
    """Sweep table with columns delta, tau, err_vs_udagger (small grids only), err_vs_utrue, iters"""
    return ConvergenceSweep(logger, thread_count, progress).run(A, u_true, D, tau_rule, delta_levels, seed, cfg)


def calibrate_linear_rule(A, u_true, D, delta, candidates=(0.01, 0.1, 1.0, 10.0), seed=0, cfg=None, logger=None):
    """Constant c of tau = c * delta with the smallest error at the given level"""
    logger = logger or ProfessionalLogger.console()
    if delta <= 0:
        raise VariProError("calibration needs a positive noise level")
    cfg = cfg or SWEEP_SOLVER_CONFIG
    u_true = np.asarray(as_array(u_true), dtype=np.float64)
    y = noisy_data(A, u_true, delta, level_seed(seed, 0))
    errors = []
    for c in candidates:
        u, _ = pnp_admm(A, y, D, SpectralFilter(c * delta), cfg, logger=logger)
        errors.append(norm(u - u_true))
    best = float(candidates[int(np.argmin(errors))])
    logger.debug(f"Calibrated tau = {best:g} * delta from errors {['%.3g' % e for e in errors]}")
    return best
