import numpy as np
import pytest
from numpy.testing import assert_allclose

from core.errors import VariProError
from Module_1_Grid import norm
from Module_3_Convex import (block_functional, clamp_box, conjugate_pairs, group_norm_functional, mixed_norm,
                             moreau_envelope_value, moreau_residual, moreau_yosida_grad, project_ball,
                             soft_threshold, zero_functional)


def test_soft_threshold():
    assert_allclose(soft_threshold(np.array([3.0, -0.5, -2.0]), 1.0), [2.0, 0.0, -1.0])


def test_clamp_box():
    assert_allclose(clamp_box(np.array([-1.0, 0.5, 2.0]), 0.0, 1.0), [0.0, 0.5, 1.0])


def test_project_ball_known_values():
    p = np.zeros((2, 1, 2))
    p[:, 0, 0] = (3.0, 4.0)
    p[:, 0, 1] = (0.1, 0.2)
    q = project_ball(p, 1.0)
    assert_allclose(q[:, 0, 0], [0.6, 0.8])
    assert_allclose(q[:, 0, 1], [0.1, 0.2])


def test_project_ball_is_idempotent(rng):
    p = 3.0 * rng.standard_normal((2, 6, 6))
    once = project_ball(p, 0.5)
    assert_allclose(project_ball(once, 0.5), once, atol=1e-14)
    assert np.max(np.sqrt(once[0] ** 2 + once[1] ** 2)) <= 0.5 + 1e-12


def test_project_ball_rejects_nonpositive_radius():
    with pytest.raises(VariProError):
        project_ball(np.zeros((2, 2, 2)), 0.0)


@pytest.mark.parametrize("name", ["half_squared_norm", "l1"])
def test_moreau_identity_for_closed_form_pairs(rng, name):
    J = conjugate_pairs()[name]
    for _ in range(20):
        v = rng.standard_normal((8, 8))
        assert moreau_residual(J.prox, J.conj_prox, v, 0.7) < 1e-10
    assert moreau_residual(J.prox, J.conj_prox, np.zeros((8, 8)), 0.7) == 0.0


@pytest.mark.parametrize("kind", ["iso", "aniso"])
def test_moreau_identity_for_group_norm(rng, kind):
    J = group_norm_functional(0.3, kind)
    for _ in range(20):
        p = rng.standard_normal((2, 5, 5))
        assert moreau_residual(J.prox, J.conj_prox, p, 1.3) < 1e-10


def test_moreau_yosida_gradient_of_half_square(rng):
    J = conjugate_pairs()["half_squared_norm"]
    v = rng.standard_normal((4, 4))
    assert_allclose(moreau_yosida_grad(J.prox, v, 1.0), v / 2, atol=1e-14)
    assert not np.any(moreau_yosida_grad(J.prox, np.zeros((4, 4)), 1.0))


def test_moreau_yosida_gradient_matches_envelope_differences(rng):
    J = conjugate_pairs()["l1"]
    tau, h = 0.5, 1e-6
    v = rng.standard_normal((3, 3))
    grad = moreau_yosida_grad(J.prox, v, tau)
    for idx in np.ndindex(v.shape):
        step = np.zeros_like(v)
        step[idx] = h
        plus = moreau_envelope_value(J.value, J.prox, v + step, tau)
        minus = moreau_envelope_value(J.value, J.prox, v - step, tau)
        assert (plus - minus) / (2 * h) == pytest.approx(grad[idx], abs=1e-4)


def test_moreau_yosida_gradient_is_lipschitz(rng):
    J = conjugate_pairs()["l1"]
    tau = 0.4
    for _ in range(20):
        a, b = rng.standard_normal((2, 5, 5))
        diff = norm(moreau_yosida_grad(J.prox, a, tau) - moreau_yosida_grad(J.prox, b, tau))
        assert diff <= norm(a - b) / tau + 1e-12


def test_mixed_norms():
    p = np.zeros((2, 1, 1))
    p[:, 0, 0] = (3.0, -4.0)
    assert mixed_norm(p, "iso") == pytest.approx(5.0)
    assert mixed_norm(p, "aniso") == pytest.approx(7.0)
    with pytest.raises(VariProError):
        mixed_norm(p, "huber")


def test_group_norm_conjugate_is_ball_indicator():
    J = group_norm_functional(1.0, "iso")
    inside = np.full((2, 2, 2), 0.5)
    assert J.conj_value(inside) == 0.0
    assert J.conj_value(2 * inside) == np.inf


def test_zero_and_block_functionals(rng):
    Z = zero_functional()
    v = rng.standard_normal((3, 3))
    assert Z.value(v) == 0.0
    assert np.array_equal(Z.prox(v, 2.0), v)
    assert not np.any(Z.dual_prox(v, 1.0))

    half_sq = conjugate_pairs()["half_squared_norm"]
    B = block_functional([half_sq, Z])
    assert B.value((v, v)) == pytest.approx(0.5 * norm(v) ** 2)
    first, second = B.prox((v, v), 1.0)
    assert_allclose(first, v / 2)
    assert np.array_equal(second, v)


def test_dual_prox_falls_back_to_moreau_identity(rng):
    l1 = conjugate_pairs()["l1"]
    from Module_3_Convex import ProxFunctional
    bare = ProxFunctional(value=l1.value, prox=l1.prox)
    q = 2.0 * rng.standard_normal((4, 4))
    assert_allclose(bare.dual_prox(q, 0.8), np.clip(q, -1.0, 1.0), atol=1e-12)
    assert not bare.has_conjugate
