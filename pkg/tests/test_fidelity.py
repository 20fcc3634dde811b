import numpy as np
import pytest
from numpy.testing import assert_allclose

from core.errors import DomainViolation, FidelityError, NonSmooth
from Module_1_Grid import norm
from Module_2_Operators import gaussian_kernel, make_blur
from Module_4_Fidelity import (DataTerm, Fidelity, fid_conjugate, fid_conjugate_prox, fid_gradient, fid_prox,
                               fid_value, fidelity_for_noise)


def test_values():
    y = np.array([1.0, 2.0, 3.0])
    assert fid_value(Fidelity("l2", y), y) == 0.0
    assert fid_value(Fidelity("l1", np.zeros(3)), np.array([1.0, -2.0, 0.0])) == 3.0
    assert fid_value(Fidelity("kl", y), y) == pytest.approx(np.sum(y - y * np.log(y)))


def test_kl_value_is_minimal_at_data():
    y = np.array([0.5, 2.0])
    F = Fidelity("kl", y)
    best = fid_value(F, y)
    for scale in (0.5, 0.9, 1.1, 2.0):
        assert fid_value(F, scale * y) > best


def test_kl_domain():
    F = Fidelity("kl", np.array([1.0, 0.0]))
    with pytest.raises(DomainViolation):
        fid_value(F, np.array([0.0, 1.0]))
    # 0 log 0 = 0
    assert fid_value(F, np.array([1.0, 0.0])) == pytest.approx(1.0)
    with pytest.raises(DomainViolation):
        Fidelity("kl", np.array([-1.0]))


def test_fidelity_validation():
    with pytest.raises(FidelityError):
        Fidelity("huber", np.zeros(2))
    with pytest.raises(FidelityError):
        Fidelity("l2", np.array([np.inf]))
    with pytest.raises(FidelityError):
        fid_value(Fidelity("l2", np.zeros(2)), np.zeros(3))


def test_gradients_vanish_at_data():
    y = np.array([0.5, 1.5])
    assert not np.any(fid_gradient(Fidelity("l2", y), y))
    assert_allclose(fid_gradient(Fidelity("kl", y), y), 0.0, atol=1e-15)
    with pytest.raises(NonSmooth):
        fid_gradient(Fidelity("l1", y), y)


@pytest.mark.parametrize("kind", ["l2", "kl"])
def test_gradient_matches_finite_differences(rng, kind):
    y = rng.uniform(0.5, 1.5, size=(4, 4))
    v = rng.uniform(0.5, 1.5, size=(4, 4))
    F = Fidelity(kind, y)
    grad = fid_gradient(F, v)
    h = 1e-5
    for idx in np.ndindex(v.shape):
        step = np.zeros_like(v)
        step[idx] = h
        numeric = (fid_value(F, v + step) - fid_value(F, v - step)) / (2 * h)
        assert numeric == pytest.approx(grad[idx], rel=1e-5, abs=1e-8)


def test_prox_known_values():
    y = np.array([1.0, 2.0])
    for tau in (0.1, 1.0, 10.0):
        assert_allclose(fid_prox(Fidelity("l2", y), y, tau), y)
    assert fid_prox(Fidelity("l1", np.zeros(1)), np.array([3.0]), 1.0)[0] == pytest.approx(2.0)
    assert fid_prox(Fidelity("kl", np.ones(1)), np.ones(1), 1.0)[0] == pytest.approx(1.0)
    with pytest.raises(FidelityError):
        fid_prox(Fidelity("l2", y), y, 0.0)


@pytest.mark.parametrize("kind", ["l2", "kl", "l1"])
def test_prox_is_nonexpansive(rng, kind):
    F = Fidelity(kind, rng.uniform(0.0, 2.0, size=(3, 3)))
    for _ in range(50):
        a, b = rng.uniform(-1.0, 3.0, size=(2, 3, 3))
        assert norm(fid_prox(F, a, 0.6) - fid_prox(F, b, 0.6)) <= norm(a - b) + 1e-12


@pytest.mark.parametrize("kind", ["l2", "kl", "l1"])
def test_prox_minimizes_its_objective(rng, kind):
    tau = 0.8
    F = Fidelity(kind, rng.uniform(0.2, 2.0, size=(3, 3)))
    v = rng.uniform(0.0, 2.0, size=(3, 3))
    w = fid_prox(F, v, tau)

    def objective(x):
        return tau * fid_value(F, x) + 0.5 * norm(x - v) ** 2

    best = objective(w)
    for _ in range(100):
        trial = w + 1e-2 * rng.uniform(-1.0, 1.0, size=w.shape)
        if kind == "kl" and np.any(trial <= 0):
            continue
        assert objective(trial) >= best - 1e-12


@pytest.mark.parametrize("kind", ["l2", "kl", "l1"])
def test_conjugate_prox_satisfies_moreau_identity(rng, kind):
    F = Fidelity(kind, rng.uniform(0.2, 2.0, size=(3, 3)))
    sigma = 0.7
    q = rng.uniform(-1.0, 2.0, size=(3, 3))
    recombined = fid_prox(F, q / sigma, 1.0 / sigma) * sigma + fid_conjugate_prox(F, q, sigma)
    assert_allclose(recombined, q, atol=1e-10)


def test_l1_conjugate_domain():
    F = Fidelity("l1", np.ones(2))
    assert fid_conjugate(F, np.array([0.5, -0.5])) == pytest.approx(0.0)
    assert fid_conjugate(F, np.array([1.5, 0.0])) == np.inf


def test_fidelity_for_noise():
    y = np.ones((2, 2))
    assert fidelity_for_noise("gaussian", y).kind == "l2"
    assert fidelity_for_noise("poisson", y).kind == "kl"
    assert fidelity_for_noise("impulse", y).kind == "l1"
    with pytest.raises(FidelityError):
        fidelity_for_noise("speckle", y)


def test_data_term_gradient_is_adjoint_composition(rng):
    A = make_blur(gaussian_kernel(3, 0.8), (6, 6))
    y = rng.standard_normal((6, 6))
    u = rng.standard_normal((6, 6))
    term = DataTerm(Fidelity("l2", y), A)
    assert_allclose(term.gradient(u), A.adjoint(A.apply(u) - y), atol=1e-12)
    assert term.value(u) == pytest.approx(0.5 * norm(A.apply(u) - y) ** 2)
    assert term.lipschitz == pytest.approx(1.0)
    with pytest.raises(FidelityError):
        DataTerm(Fidelity("l2", np.zeros((3, 3))), A)
