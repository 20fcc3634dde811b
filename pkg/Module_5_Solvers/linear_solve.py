"""
Symmetric Positive Definite Solves

Conjugate-gradient wrapper around scipy.sparse.linalg.cg used by every inner
linear solve (ADMM u-updates, Tikhonov proxes, denoiser prox checks).
"""

import numpy as np
from scipy.sparse.linalg import LinearOperator, cg

from core.errors import InnerSolveFailure


def solve_spd(apply, b, x0=None, tol=1e-10, max_iters=None):
    """Solve M x = b for SPD M given as a function on arrays shaped like b.

    tol is relative to ||b||. Raises InnerSolveFailure when CG does not reach it.
    """
    b = np.asarray(b, dtype=np.float64)
    shape = b.shape
    n = b.size
    if not np.any(b):
        return np.zeros(shape)

    operator = LinearOperator((n, n), matvec=lambda x: np.asarray(apply(x.reshape(shape)), dtype=np.float64).ravel(),
                              dtype=np.float64)
    start = None if x0 is None else np.asarray(x0, dtype=np.float64).ravel()
    x, info = cg(operator, b.ravel(), x0=start, rtol=tol, atol=0.0,
                 maxiter=max_iters if max_iters is not None else 10 * n)
    if info != 0:
        residual = np.linalg.norm(operator.matvec(x) - b.ravel()) / np.linalg.norm(b)
        if residual > 10 * tol:
            raise InnerSolveFailure(f"conjugate gradient stopped with relative residual {residual:.3g} "
                                    f"(target {tol:g})")
    return x.reshape(shape)


def solve_normal_equations(A, rhs, shift, x0=None, tol=1e-10):
    """(A*A + shift I) x = rhs"""
    return solve_spd(lambda x: A.normal(x) + shift * x, rhs, x0=x0, tol=tol)


def least_squares(A, y, x0=None, tol=1e-10):
    """Minimum of ||Au - y||^2 by CG on the normal equations A*A u = A*y"""
    return solve_spd(A.normal, A.adjoint(y), x0=x0, tol=tol)
