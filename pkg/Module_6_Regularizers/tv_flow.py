"""
Total Variation Flow

Explicit scheme for the nonlinear diffusion du/dt = div(grad u / |grad u|_eps)
with |g|_eps = sqrt(|g|^2 + eps^2). ROF with weight t is one implicit step of
length t of this flow. The scheme is stable for dt <= eps * h^2 / 4 and
preserves the image mean.
"""

import numpy as np

from core.logger import ProfessionalLogger
from Module_1_Grid.grid_types import as_array
from Module_1_Grid.differential import gradient, divergence


def tv_flow(u0, dt, steps, eps=0.1, spacing=1.0, logger=None):
    """Run `steps` explicit steps; returns (u, list of TV values after each step)"""
    logger = logger or ProfessionalLogger.console()
    if dt > eps * spacing ** 2 / 4.0:
        logger.warning(f"⚠️  TV flow step dt={dt:g} exceeds the stability bound {eps * spacing ** 2 / 4.0:g}")

    u = np.array(as_array(u0), dtype=np.float64)
    history = []
    for _ in range(steps):
        p = gradient(u, spacing)
        smoothed = np.sqrt(p[0] ** 2 + p[1] ** 2 + eps ** 2)
        u = u + dt * divergence(p / smoothed, spacing)
        q = gradient(u, spacing)
        history.append(float(np.sum(np.sqrt(q[0] ** 2 + q[1] ** 2))))
    return u, history
