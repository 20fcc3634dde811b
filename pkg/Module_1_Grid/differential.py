"""
Discrete Differential Operators

Forward-difference gradient with Neumann boundary and its exact negative
adjoint. divergence is the algebraic transpose of gradient, so
<gradient(u), p> + <u, divergence(p)> = 0 up to rounding.
"""

import numpy as np

from .grid_types import GridImage, VectorField, as_array


def _unpack(u, h):
    if isinstance(u, GridImage):
        return u.data, u.spacing
    return np.asarray(u, dtype=np.float64), h


def gradient(u, h=1.0):
    """Forward differences; the last column of px and the last row of py are 0.

    Accepts a GridImage (spacing taken from it) or a 2-D array. Returns an
    array of shape (2, height, width); wrap in VectorField when a validated
    container is needed.
    """
    u, h = _unpack(u, h)
    p = np.zeros((2,) + u.shape)
    p[0, :, :-1] = (u[:, 1:] - u[:, :-1]) / h
    p[1, :-1, :] = (u[1:, :] - u[:-1, :]) / h
    return p


def divergence(p, h=1.0):
    """Negative adjoint of gradient (backward differences, matching boundary)"""
    p = as_array(p) if isinstance(p, VectorField) else np.asarray(p, dtype=np.float64)
    px, py = p[0], p[1]
    d = np.zeros(px.shape)

    if px.shape[1] > 1:
        d[:, 0] += px[:, 0]
        d[:, 1:-1] += px[:, 1:-1] - px[:, :-2]
        d[:, -1] -= px[:, -2]
    if py.shape[0] > 1:
        d[0, :] += py[0, :]
        d[1:-1, :] += py[1:-1, :] - py[:-2, :]
        d[-1, :] -= py[-2, :]
    return d / h


def laplacian(u, h=1.0):
    """Five-point Laplacian with Neumann boundary, div(grad u)"""
    u, h = _unpack(u, h)
    return divergence(gradient(u, h), h)


def gradient_magnitude(p):
    """Pixelwise Euclidean norm |(px, py)|"""
    return np.sqrt(p[0] ** 2 + p[1] ** 2)
