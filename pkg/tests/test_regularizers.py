import numpy as np
import pytest
from numpy.testing import assert_allclose

from core.errors import RegularizerError, Unsupported
from Module_1_Grid import divergence, gradient, norm, write_csv_image
from Module_6_Regularizers import (Regularizer, RegularizerProx, load_prototypes, nearest_prototype, reg_prox,
                                   reg_subgradient, reg_value, tv_flow)


def test_tv_of_constant_is_zero():
    assert reg_value(Regularizer("tv_iso", 1.0), np.full((5, 5), 2.0)) == 0.0


def test_tv_aniso_of_block_is_perimeter():
    u = np.zeros((8, 8))
    u[2:5, 2:5] = 1.0
    assert reg_value(Regularizer("tv_aniso", 1.0), u) == pytest.approx(12.0)

    rectangle = np.zeros((10, 12))
    rectangle[1:4, 3:9] = 1.0
    assert reg_value(Regularizer("tv_aniso", 1.0), rectangle) == pytest.approx(2 * (3 + 6))


def test_tv_is_one_homogeneous(rng):
    u = rng.standard_normal((6, 6))
    for kind in ("tv_iso", "tv_aniso"):
        R = Regularizer(kind, 0.7)
        assert reg_value(R, 3.5 * u) == pytest.approx(3.5 * reg_value(R, u), rel=1e-12)


def test_proto_dist_values(rng):
    prototypes = [rng.standard_normal((4, 4)) for _ in range(3)]
    R = Regularizer("proto_dist", 1.0, prototypes)
    assert reg_value(R, prototypes[1]) == 0.0
    for _ in range(20):
        a, b = rng.standard_normal((2, 4, 4))
        assert abs(reg_value(R, a) - reg_value(R, b)) <= norm(a - b) + 1e-12


def test_regularizer_validation():
    with pytest.raises(RegularizerError):
        Regularizer("tv_huber", 1.0)
    with pytest.raises(RegularizerError):
        Regularizer("tv_iso", -1.0)
    with pytest.raises(RegularizerError):
        Regularizer("proto_dist", 1.0)
    with pytest.raises(RegularizerError):
        Regularizer("proto_dist", 1.0, [np.zeros((2, 2)), np.zeros((3, 3))])


def test_subgradients(rng):
    u = rng.standard_normal((6, 6))
    assert_allclose(reg_subgradient(Regularizer("tikhonov_l2", 1.0), u).value, u)
    with pytest.raises(Unsupported):
        reg_subgradient(Regularizer("proto_dist", 1.0, [u]), u)


def _finite_difference_gradient(f, u, h=1e-6):
    grad = np.zeros_like(u)
    for idx in np.ndindex(u.shape):
        step = np.zeros_like(u)
        step[idx] = h
        grad[idx] = (f(u + step) - f(u - step)) / (2 * h)
    return grad


def test_tikhonov_grad_subgradient_matches_finite_differences(rng):
    R = Regularizer("tikhonov_grad", 1.0)
    u = rng.standard_normal((6, 6))
    numeric = _finite_difference_gradient(lambda x: reg_value(R, x), u)
    assert_allclose(reg_subgradient(R, u).value, numeric, atol=1e-5)


def test_tv_subgradient_on_ramp_matches_finite_differences(rng):
    R = Regularizer("tv_iso", 1.0)
    i, j = np.indices((6, 6))
    u = 0.3 * i + 0.7 * j + 0.01 * rng.random((6, 6))
    result = reg_subgradient(R, u)
    assert result.all_smooth
    numeric = _finite_difference_gradient(lambda x: reg_value(R, x), u)
    assert_allclose(result.value, numeric, atol=1e-4)


def test_tv_subgradient_flags_flat_regions():
    result = reg_subgradient(Regularizer("tv_iso", 1.0), np.zeros((4, 4)))
    assert not result.all_smooth
    assert not np.any(result.value)


def test_prox_small_step_is_identity(rng):
    v = rng.random((5, 5))
    prototypes = [np.zeros((5, 5))]
    for kind in ("tikhonov_l2", "tikhonov_grad", "tv_iso", "tv_aniso", "proto_dist"):
        R = Regularizer(kind, 1.0, prototypes if kind == "proto_dist" else ())
        assert norm(reg_prox(R, v, 1e-8) - v) < 1e-6, kind


def test_tikhonov_proxes():
    assert reg_prox(Regularizer("tikhonov_l2", 1.0), np.array([2.0]), 1.0)[0] == pytest.approx(1.0)

    v = np.zeros((6, 6))
    v[2, 3] = 1.0
    u = reg_prox(Regularizer("tikhonov_grad", 0.5), v, 2.0)
    assert_allclose(u - divergence(gradient(u)), v, atol=1e-8)


def test_tv_prox_of_pair():
    u = reg_prox(Regularizer("tv_iso", 0.2), np.array([[0.0, 1.0]]), 1.0)
    assert_allclose(u, [[0.2, 0.8]], atol=1e-8)


def test_tv_prox_is_nonexpansive(rng):
    R = Regularizer("tv_iso", 0.3)
    for _ in range(20):
        a, b = rng.random((2, 5, 5))
        assert norm(reg_prox(R, a, 1.0) - reg_prox(R, b, 1.0)) <= norm(a - b) + 1e-6


def test_warm_started_prox_matches_cold_prox(rng, logger):
    R = Regularizer("tv_aniso", 0.2)
    prox = RegularizerProx(R, logger)
    v = rng.random((6, 6))
    prox(rng.random((6, 6)), 1.0)
    assert_allclose(prox(v, 1.0), reg_prox(R, v, 1.0), atol=1e-7)
    assert prox.calls == 2


def test_proto_prox():
    prototypes = [np.zeros((1, 2)), np.array([[4.0, 0.0]])]
    R = Regularizer("proto_dist", 1.0, prototypes)
    assert_allclose(reg_prox(R, np.array([[0.5, 0.0]]), 1.0), [[0.0, 0.0]])
    assert_allclose(reg_prox(R, np.array([[1.5, 0.0]]), 0.5), [[1.0, 0.0]])
    # equidistant: lowest index wins
    assert nearest_prototype(R, np.array([[2.0, 0.0]]))[0] == 0


def test_load_prototypes(tmp_path, rng):
    images = [rng.random((3, 3)) for _ in range(2)]
    for index, image in enumerate(images):
        write_csv_image(image, tmp_path / f"proto_{index}.csv")
    loaded = load_prototypes(tmp_path)
    assert len(loaded) == 2
    assert np.array_equal(loaded[0], images[0])
    with pytest.raises(RegularizerError):
        load_prototypes(tmp_path / "missing")


def test_tv_flow_preserves_mean_and_lowers_tv(disk16, logger):
    u, history = tv_flow(disk16, dt=0.02, steps=50, logger=logger)
    assert u.mean() == pytest.approx(disk16.mean(), abs=1e-12)
    assert history[-1] < reg_value(Regularizer("tv_iso", 1.0), disk16)
