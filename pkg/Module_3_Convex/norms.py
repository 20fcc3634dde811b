"""
Norm Functionals on Vector Fields

alpha * ||p||_{2,1} (isotropic) and alpha * ||p||_{1,1} (anisotropic) over
(2, H, W) fields, with their conjugates: the indicator of the pixelwise
l2-ball, resp. l-inf box, of radius alpha. Also block sums and the zero
functional used to assemble saddle-point problems.
"""

import numpy as np

from core.errors import VariProError
from Module_1_Grid.grid_types import as_array, norm
from .moreau import ProxFunctional
from .projections import project_ball, project_linf_ball, soft_threshold

TV_KINDS = ("iso", "aniso")


def mixed_norm(p, kind="iso"):
    """sum_x |p(x)|_2 (iso) or sum_x |px(x)| + |py(x)| (aniso)"""
    p = as_array(p)
    if kind == "iso":
        return float(np.sum(np.sqrt(p[0] ** 2 + p[1] ** 2)))
    if kind == "aniso":
        return float(np.sum(np.abs(p)))
    raise VariProError(f"unknown norm kind '{kind}'")


def project_dual_ball(p, alpha, kind="iso"):
    """Projection onto the dual-norm ball of radius alpha"""
    if kind == "iso":
        return project_ball(p, alpha)
    return project_linf_ball(p, alpha)


def _in_dual_ball(p, alpha, kind):
    p = as_array(p)
    if kind == "iso":
        magnitude = np.sqrt(p[0] ** 2 + p[1] ** 2)
    else:
        magnitude = np.abs(p)
    return np.max(magnitude, initial=0.0) <= alpha * (1.0 + 1e-9) + 1e-15


def group_norm_functional(alpha, kind="iso"):
    """ProxFunctional of alpha * mixed_norm(., kind)"""
    if kind not in TV_KINDS:
        raise VariProError(f"unknown norm kind '{kind}'")

    def prox(p, tau):
        p = as_array(p)
        if kind == "aniso":
            return soft_threshold(p, alpha * tau)
        return p - project_ball(p, alpha * tau) if alpha > 0 else np.array(p, dtype=np.float64)

    def conj_prox(q, sigma):
        if alpha == 0:
            return np.zeros_like(as_array(q), dtype=np.float64)
        return project_dual_ball(q, alpha, kind)

    return ProxFunctional(
        value=lambda p: alpha * mixed_norm(p, kind),
        prox=prox,
        conj_value=lambda q: 0.0 if _in_dual_ball(q, alpha, kind) else np.inf,
        conj_prox=conj_prox,
        name=f"{alpha:g}*tv_{kind}",
    )


def zero_functional():
    """J = 0; its conjugate is the indicator of {0}"""
    return ProxFunctional(
        value=lambda v: 0.0,
        prox=lambda v, tau: np.array(as_array(v)),
        conj_value=lambda q: 0.0 if norm(q) <= 1e-12 else np.inf,
        conj_prox=lambda q, sigma: np.zeros_like(as_array(q)),
        name="zero",
    )


def block_functional(parts):
    """Separable sum J(v_1, ..., v_n) = sum_i J_i(v_i) over tuple arguments"""
    parts = list(parts)

    def conj_value(q):
        if not all(part.has_conjugate for part in parts):
            return np.nan
        return sum(part.conj_value(qi) for part, qi in zip(parts, q))

    return ProxFunctional(
        value=lambda v: sum(part.value(vi) for part, vi in zip(parts, v)),
        prox=lambda v, tau: tuple(part.prox(vi, tau) for part, vi in zip(parts, v)),
        conj_value=conj_value,
        conj_prox=lambda q, sigma: tuple(part.dual_prox(qi, sigma) for part, qi in zip(parts, q)),
        name=" + ".join(part.name for part in parts),
    )
