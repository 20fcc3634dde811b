"""
Operator Spectra

Singular values of forward operators, used to exhibit the decaying spectrum
of ill-posed operators and the lower bound mu = lambda_min(A*A).
"""

import numpy as np
from scipy import linalg
from scipy.sparse.linalg import LinearOperator, eigsh

from core.errors import ConvergenceFailure, OperatorError
from .linear_map import IdentityMap, MaskMap
from .blur import BlurMap
from .fourier_sampling import SubsampledFourierMap


def _normal_block(A, block):
    """A*A applied to each column of a (n, b) block"""
    out = np.empty_like(block)
    for j in range(block.shape[1]):
        out[:, j] = A.normal(block[:, j].reshape(A.domain_shape)).ravel()
    return out


def singular_spectrum_probe(A, k, max_iters=500, tol=1e-8, oversampling=None, seed=0):
    """Top-k singular values of A in descending order.

    Block power iteration on A*A with QR re-orthonormalization and a
    Rayleigh-Ritz step; stops when the top-k Ritz values change by at most
    tol relative to the largest one.
    """
    if k < 1:
        raise OperatorError(f"k must be >= 1, got {k}")
    n = int(np.prod(A.domain_shape))
    if k > n:
        raise OperatorError(f"k = {k} exceeds the domain dimension {n}")
    block_size = min(n, 2 * k + 4 if oversampling is None else k + oversampling)

    rng = np.random.default_rng(seed)
    q, _ = linalg.qr(rng.standard_normal((n, block_size)), mode="economic")
    previous = None
    for _ in range(max_iters):
        z = _normal_block(A, q)
        ritz, vectors = linalg.eigh(q.T @ z)
        order = np.argsort(ritz)[::-1]
        ritz = np.maximum(ritz[order], 0.0)
        q, _ = linalg.qr(z @ vectors[:, order], mode="economic")

        top = ritz[:k]
        scale = max(top[0], np.finfo(float).tiny)
        if previous is not None and np.max(np.abs(top - previous)) <= tol * scale:
            return list(np.sqrt(top))
        previous = top

    raise ConvergenceFailure(f"singular spectrum probe did not converge in {max_iters} iterations")


def smallest_eigenvalue(A, tol=1e-10):
    """mu = lambda_min(A*A); closed form for diagonalizable maps, Lanczos otherwise"""
    if isinstance(A, IdentityMap):
        return 1.0
    if isinstance(A, (MaskMap, SubsampledFourierMap)):
        return float(np.min(A.mask))
    if isinstance(A, BlurMap):
        return float(np.min(np.abs(A.symbol)) ** 2)

    n = int(np.prod(A.domain_shape))
    gram = LinearOperator((n, n), matvec=lambda x: A.normal(np.asarray(x).reshape(A.domain_shape)).ravel(),
                          dtype=np.float64)
    value = eigsh(gram, k=1, which="SA", tol=tol, return_eigenvectors=False)[0]
    return float(max(value, 0.0))
