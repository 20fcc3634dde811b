"""
Unrolled Iterative Schemes

u_{k+1} = Lambda_k(u_k, h_k) with h_k = A*(A u_k - y) and one of three
update forms:
    learned_gradient   u + Gamma(h)
    variational_net    u - h + Gamma(u)
    learned_prox       Gamma(u - h)
Gamma is either one map shared by all steps or one map per step.
"""

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from core.errors import DeqError
from core.logger import ProfessionalLogger
from Module_1_Grid.grid_types import as_array, norm
from Module_5_Solvers.solver_config import SolverTrace
from .lipschitz_map import LipschitzMap

UPDATE_FORMS = ("learned_gradient", "variational_net", "learned_prox")


@dataclass(frozen=True)
class UpdateMap:
    form: str
    gamma: Union[LipschitzMap, Sequence[LipschitzMap]]

    def __post_init__(self):
        if self.form not in UPDATE_FORMS:
            raise DeqError(f"unknown update form '{self.form}'")
        if not isinstance(self.gamma, LipschitzMap):
            object.__setattr__(self, "gamma", tuple(self.gamma))
            if not self.gamma:
                raise DeqError("per-step maps must not be empty")

    def map_for_step(self, k):
        if isinstance(self.gamma, LipschitzMap):
            return self.gamma
        if k >= len(self.gamma):
            raise DeqError(f"{len(self.gamma)} per-step maps cannot run step {k + 1}")
        return self.gamma[k]

    def step(self, k, u, h):
        gamma = self.map_for_step(k)
        if self.form == "learned_gradient":
            return u + gamma(h)
        if self.form == "variational_net":
            return u - h + gamma(u)
        return gamma(u - h)


def run_unrolled(scheme, A, y, u0, steps, logger=None):
    """Execute exactly `steps` updates; the trace records ||h|| and 1/2 ||Au - y||^2 per step"""
    logger = logger or ProfessionalLogger.console()
    if steps < 1:
        raise DeqError(f"an unrolled scheme needs at least one step, got {steps}")

    u = np.array(as_array(u0), dtype=np.float64)
    trace = SolverTrace(method=f"unrolled_{scheme.form}")
    for k in range(steps):
        h = A.adjoint(A.apply(u) - y)
        u = np.asarray(scheme.step(k, u, h), dtype=np.float64)
        trace.record(energy=0.5 * norm(A.apply(u) - y) ** 2, primal_res=norm(h), iterate_norm=norm(u))
    # fixed number of steps, no stopping test
    trace.status = "completed"
    logger.debug(f"Unrolled {scheme.form}: {steps} steps, final ||h||={trace.last['primal_res']:.3g}")
    return u, trace
