"""
Spectral Filtering of Linear Denoisers

For D = prox_J the filter g_tau(lambda) = lambda / (tau - lambda (tau - 1))
gives g_tau(D) = (tau D^-1 - (tau - 1) Id)^-1 = prox_{tau J}, so tau scales the
implicit regularizer without touching D's eigenvectors. g_1 = Id on the
spectrum, g_tau(1) = 1 and tau -> 0 gives g_0 = 1 (no regularization).

A tabulated filter is any callable (lambda, tau) -> g; it is admissible when
(1 - g) / (tau g) stays between positive constants on the spectrum and
settles as tau -> 0.
"""

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from core.errors import DenoiserError, FilterDomainViolation

FILTER_FAMILIES = ("canonical", "tabulated")

# eigenvalues this close to 1 carry no regularization and are left out of the ratio bounds
UNIT_EIGENVALUE_TOL = 1e-12


def canonical_filter_values(lam, tau):
    lam = np.asarray(lam, dtype=np.float64)
    denominator = tau - lam * (tau - 1.0)
    if np.any(denominator <= 0):
        bad = float(lam.ravel()[np.argmin(denominator.ravel())])
        raise FilterDomainViolation(f"g_tau undefined at lambda={bad:g} for tau={tau:g}")
    return lam / denominator


@dataclass(frozen=True)
class SpectralFilter:
    tau: float
    family: str = "canonical"
    function: Optional[Callable] = None

    def __post_init__(self):
        if self.family not in FILTER_FAMILIES:
            raise DenoiserError(f"unknown filter family '{self.family}'")
        if not np.isfinite(self.tau) or self.tau < 0:
            raise DenoiserError(f"filter parameter tau must be >= 0, got {self.tau}")
        if self.family == "tabulated" and self.function is None:
            raise DenoiserError("a tabulated filter needs a function (lambda, tau) -> g")

    def values(self, lam, tau=None):
        tau = self.tau if tau is None else tau
        if self.family == "canonical":
            return canonical_filter_values(lam, tau)
        return np.asarray(self.function(np.asarray(lam, dtype=np.float64), tau), dtype=np.float64)

    def at(self, tau):
        return SpectralFilter(tau, self.family, self.function)


def apply_spectral_filter(D, f):
    """Denoiser with eigenvalues g_tau(lambda_i) and D's eigenvectors"""
    values = f.values(D.eigenvalues)
    if np.any(~np.isfinite(values)):
        raise FilterDomainViolation("filter produced non-finite eigenvalues")
    return D.with_eigenvalues(values)


def filter_admissibility(f, spectrum, tol=1e-3, logger=None, run_id=None):
    """Check the ratio (1 - g_tau) / (tau g_tau) over the spectrum.

    The ratio is evaluated at tau and tau/2, tau/4, ... (8 halvings) to test
    that it settles. Returns a report dict; with a logger and run_id the report
    is also written as a certificate.
    """
    spectrum = np.asarray(spectrum, dtype=np.float64).ravel()
    lam = spectrum[spectrum < 1.0 - UNIT_EIGENVALUE_TOL]
    report = {"tau": float(f.tau), "family": f.family, "spectrum_points": int(spectrum.size)}

    if f.tau <= 0:
        report.update(admissible=False, reason="tau must be > 0 for the ratio test")
    elif lam.size == 0:
        report.update(ratio_min=0.0, ratio_max=0.0, variation=0.0, admissible=True,
                      reason="no eigenvalue below 1, the regularizer vanishes")
    elif np.any(spectrum <= 0):
        report.update(admissible=False, reason="spectrum reaches 0")
    else:
        ratios = []
        tau = f.tau
        try:
            for _ in range(9):
                g = f.values(lam, tau)
                ratios.append((1.0 - g) / (tau * g))
                tau *= 0.5
        except FilterDomainViolation as e:
            report.update(admissible=False, reason=str(e))
        else:
            current = ratios[0]
            variation = float(np.max(np.abs(ratios[-1] - ratios[-2]) / np.maximum(np.abs(ratios[-2]), 1e-300)))
            report.update(
                ratio_min=float(np.min(current)),
                ratio_max=float(np.max(current)),
                variation=variation,
                admissible=bool(np.min(current) > 0 and np.all(np.isfinite(current)) and variation <= tol),
            )

    if logger is not None and run_id is not None:
        logger.log_certificate_report("filter_admissibility", run_id, report)
    return report
