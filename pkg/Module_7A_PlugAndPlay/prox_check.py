"""
Proximal Characterization Check

A symmetric denoiser with spectrum in (0, 1] is the prox of
J(x) = 1/2 <x, (D^-1 - Id) x>. The check solves min_u J(u) + 1/2 ||u - v||^2,
i.e. (Id + (D^-1 - Id)) u = v, by conjugate gradient for random v and
compares the minimizer with D(v).
"""

import numpy as np

from core.logger import ProfessionalLogger
from Module_1_Grid.grid_types import norm
from Module_5_Solvers.linear_solve import solve_spd

PROX_CHECK_TOL = 1e-8
SYMMETRY_TOL = 1e-10
PROX_CHECK_TRIALS = 20


def prox_by_cg(D, v, tau=1.0, tol=1e-12):
    """argmin_u tau J(u) + 1/2 ||u - v||^2 by CG on (Id + tau (D^-1 - Id)) u = v"""
    return solve_spd(lambda x: x + tau * D.apply_inverse_minus_identity(x), v, x0=v, tol=tol)


def verify_prox_characterization(D, trials=PROX_CHECK_TRIALS, seed=0, tol=PROX_CHECK_TOL,
                                 logger=None, run_id="denoiser"):
    logger = logger or ProfessionalLogger.console()
    rng = np.random.default_rng(seed)

    report = {
        "representation": type(D).__name__,
        "trials": trials,
        "symmetric_defect": D.symmetric_defect(),
        "spectrum_min": D.lower_bound,
        "spectrum_max": D.upper_bound,
        "max_deviation": None,
    }
    issues = []
    if report["symmetric_defect"] > SYMMETRY_TOL:
        issues.append("not symmetric")
    if report["spectrum_min"] <= 0:
        issues.append("spectrum reaches 0")
    if report["spectrum_max"] > 1.0 + SYMMETRY_TOL:
        issues.append("spectrum exceeds 1")

    if report["spectrum_min"] > 0:
        deviation = 0.0
        for _ in range(trials):
            v = rng.standard_normal(D.shape)
            expected = D.apply(v)
            u = prox_by_cg(D, v)
            deviation = max(deviation, norm(u - expected) / max(norm(expected), 1e-300))
        report["max_deviation"] = float(deviation)
        if deviation > tol:
            issues.append(f"prox deviation {deviation:.3g} above {tol:g}")

    report["issues"] = issues
    report["passed"] = not issues
    if report["passed"]:
        logger.debug(f"✅ {run_id}: denoiser is the prox of its quadratic regularizer")
    else:
        logger.warning(f"⚠️  {run_id}: prox characterization failed ({'; '.join(issues)})")
    logger.log_certificate_report("prox_characterization", run_id, report)
    return report
