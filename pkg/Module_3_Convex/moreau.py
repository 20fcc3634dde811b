"""
Moreau Calculus

Moreau identity residuals, the Moreau-Yosida envelope and its gradient, and
a registry of convex functionals whose conjugates have closed forms.
"""

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from Module_1_Grid.grid_types import as_array, norm
from .projections import soft_threshold, project_linf_ball


@dataclass(frozen=True)
class ProxFunctional:
    """A proper convex functional known through its value and prox.

    prox(v, tau) = argmin_w value(w) + ||w - v||^2 / (2 tau). When conj_prox
    is not given, the conjugate prox is obtained from the Moreau identity.
    """

    value: Callable
    prox: Callable
    conj_value: Optional[Callable] = None
    conj_prox: Optional[Callable] = None
    name: str = "functional"

    def dual_prox(self, p, sigma):
        """prox of sigma * J*"""
        if self.conj_prox is not None:
            return self.conj_prox(p, sigma)
        p = as_array(p)
        return p - sigma * self.prox(p / sigma, 1.0 / sigma)

    @property
    def has_conjugate(self):
        return self.conj_value is not None


def _indicator_linf(p, radius=1.0):
    return 0.0 if np.max(np.abs(as_array(p)), initial=0.0) <= radius * (1 + 1e-12) else np.inf


def conjugate_pairs():
    """Closed-form conjugate pairs: half squared norm (self-conjugate) and l1 / l-inf ball"""
    half_sq = ProxFunctional(
        value=lambda v: 0.5 * norm(v) ** 2,
        prox=lambda v, tau: as_array(v) / (1.0 + tau),
        conj_value=lambda p: 0.5 * norm(p) ** 2,
        conj_prox=lambda p, sigma: as_array(p) / (1.0 + sigma),
        name="half_squared_norm",
    )
    l1 = ProxFunctional(
        value=lambda v: float(np.sum(np.abs(as_array(v)))),
        prox=soft_threshold,
        conj_value=_indicator_linf,
        conj_prox=lambda p, sigma: project_linf_ball(p, 1.0),
        name="l1",
    )
    return {"half_squared_norm": half_sq, "l1": l1}


def moreau_residual(prox_J, prox_J_star, v, tau):
    """||v - prox_{tau J}(v) - tau * prox_{J*/tau}(v / tau)||"""
    v = as_array(v)
    return norm(v - prox_J(v, tau) - tau * prox_J_star(v / tau, 1.0 / tau))


def moreau_yosida_grad(J_prox, v, tau):
    """Gradient of the Moreau-Yosida envelope J_tau at v: (v - prox_{tau J}(v)) / tau"""
    v = as_array(v)
    return (v - J_prox(v, tau)) / tau


def moreau_envelope_value(J_value, J_prox, v, tau):
    """J_tau(v) = min_w J(w) + ||w - v||^2 / (2 tau), evaluated at the prox point"""
    w = J_prox(as_array(v), tau)
    return J_value(w) + norm(w - as_array(v)) ** 2 / (2.0 * tau)
