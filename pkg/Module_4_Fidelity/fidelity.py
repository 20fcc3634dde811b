"""
Data Fidelity Terms

D(v, y) for the three noise models:
    l2  (gaussian): 1/2 ||v - y||^2
    kl  (poisson):  sum v - y log v      (0 log 0 = 0)
    l1  (impulse):  sum |v - y|

The KL value omits the y log y - y constant of the true divergence, so it is
not zero at v = y; gradients and proxes are unaffected.
"""

from dataclasses import dataclass

import numpy as np

from core.errors import DomainViolation, FidelityError, NonSmooth
from Module_1_Grid.grid_types import as_array, check_same_shape, inner, norm
from Module_3_Convex.moreau import ProxFunctional
from Module_3_Convex.projections import soft_threshold, project_linf_ball

FIDELITY_KINDS = ("l2", "kl", "l1")

# MAP data term of each noise model
NOISE_TO_FIDELITY = {"gaussian": "l2", "poisson": "kl", "impulse": "l1"}


@dataclass(frozen=True)
class Fidelity:
    """Data term of kind l2, kl or l1 around the data y"""

    kind: str
    y: np.ndarray

    def __post_init__(self):
        if self.kind not in FIDELITY_KINDS:
            raise FidelityError(f"unknown fidelity kind '{self.kind}'")
        y = np.array(as_array(self.y))
        if not np.all(np.isfinite(y)):
            raise FidelityError("fidelity data contains NaN or Inf entries")
        if self.kind != "l2" and np.iscomplexobj(y):
            raise FidelityError(f"{self.kind} fidelity needs real data")
        if self.kind == "kl" and np.any(y < 0):
            raise DomainViolation("kl fidelity needs nonnegative data")
        y.setflags(write=False)
        object.__setattr__(self, "y", y)

    @property
    def smooth(self):
        return self.kind != "l1"

    @property
    def lipschitz(self):
        """Lipschitz constant of the gradient (inf for kl, undefined for l1)"""
        if self.kind == "l1":
            raise NonSmooth("l1 fidelity has no gradient")
        return 1.0 if self.kind == "l2" else np.inf


def _prepare(F, v):
    v = as_array(v)
    check_same_shape(v, F.y, "fidelity argument and data")
    return v


def _require_kl_domain(F, v):
    if np.any(v < 0) or np.any((v <= 0) & (F.y > 0)):
        raise DomainViolation("kl fidelity evaluated at a nonpositive point")


def fid_value(F, v):
    v = _prepare(F, v)
    if F.kind == "l2":
        return 0.5 * norm(v - F.y) ** 2
    if F.kind == "l1":
        return float(np.sum(np.abs(v - F.y)))
    _require_kl_domain(F, v)
    positive = F.y > 0
    return float(np.sum(v) - np.sum(F.y[positive] * np.log(v[positive])))


def fid_gradient(F, v):
    v = _prepare(F, v)
    if F.kind == "l1":
        raise NonSmooth("l1 fidelity has no gradient")
    if F.kind == "l2":
        return v - F.y
    _require_kl_domain(F, v)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(F.y > 0, F.y / v, 0.0)
    return 1.0 - ratio


def fid_prox(F, v, tau):
    """prox of tau * D(., y) at v"""
    if tau <= 0:
        raise FidelityError(f"prox step must be > 0, got {tau}")
    v = _prepare(F, v)
    if F.kind == "l2":
        return (v + tau * F.y) / (1.0 + tau)
    if F.kind == "l1":
        return F.y + soft_threshold(v - F.y, tau)
    # positive root of w^2 + (tau - v) w - tau y = 0
    shifted = v - tau
    return 0.5 * (shifted + np.sqrt(shifted ** 2 + 4.0 * tau * F.y))


def fid_conjugate(F, q):
    """Convex conjugate D*(q) = sup_v <q, v> - D(v, y); may be +inf"""
    q = _prepare(F, q)
    if F.kind == "l2":
        return 0.5 * norm(q) ** 2 + inner(q, F.y)
    if F.kind == "l1":
        if np.max(np.abs(q), initial=0.0) > 1.0 + 1e-12:
            return np.inf
        return inner(q, F.y)

    positive = F.y > 0
    if np.any(q[positive] >= 1.0) or np.any(q[~positive] > 1.0 + 1e-12):
        return np.inf
    y = F.y[positive]
    return float(np.sum(-y + y * np.log(y) - y * np.log(1.0 - q[positive])))


def fid_conjugate_prox(F, q, sigma):
    """prox of sigma * D* at q"""
    q = _prepare(F, q)
    if F.kind == "l2":
        return (q - sigma * F.y) / (1.0 + sigma)
    if F.kind == "l1":
        return project_linf_ball(q - sigma * F.y, 1.0)
    # Moreau identity
    return q - sigma * fid_prox(F, q / sigma, 1.0 / sigma)


def fidelity_for_noise(noise_spec, y):
    """MAP data term of a noise model: gaussian -> l2, poisson -> kl, impulse -> l1"""
    kind = noise_spec if isinstance(noise_spec, str) else noise_spec.kind
    if kind not in NOISE_TO_FIDELITY:
        raise FidelityError(f"no fidelity for noise kind '{kind}'")
    return Fidelity(NOISE_TO_FIDELITY[kind], y)


class DataTerm:
    """D(Au, y) as a function of u"""

    def __init__(self, F, A):
        if A.range_shape != np.shape(F.y):
            raise FidelityError(f"operator range {A.range_shape} does not match data {np.shape(F.y)}")
        self.F = F
        self.A = A

    def value(self, u):
        return fid_value(self.F, self.A.apply(u))

    def gradient(self, u):
        """A* grad D(Au)"""
        return self.A.adjoint(fid_gradient(self.F, self.A.apply(u)))

    @property
    def lipschitz(self):
        return self.A.norm_estimate ** 2 * self.F.lipschitz


def fidelity_functional(F):
    """F as a ProxFunctional (value, prox, conjugate value, conjugate prox)"""
    return ProxFunctional(
        value=lambda v: fid_value(F, v),
        prox=lambda v, tau: fid_prox(F, v, tau),
        conj_value=lambda q: fid_conjugate(F, q),
        conj_prox=lambda q, sigma: fid_conjugate_prox(F, q, sigma),
        name=F.kind,
    )
