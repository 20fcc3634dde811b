import numpy as np
import pytest
from numpy.testing import assert_allclose

from core.errors import GridError, NegativeIntensity
from Module_1_Grid import (GridImage, VectorField, NoiseSpec, SplitMix64, add_noise, dft2, divergence, gradient,
                           idft2, inner, laplacian, norm, read_csv_image, read_pgm, write_csv_image, write_pgm)


def test_gradient_of_constant_is_zero():
    assert not np.any(gradient(np.full((5, 7), 3.0)))


def test_gradient_single_forward_difference():
    p = gradient(np.array([[0.0, 2.5]]))
    assert_allclose(p[0], [[2.5, 0.0]])
    assert_allclose(p[1], [[0.0, 0.0]])


def test_gradient_uses_grid_spacing():
    u = GridImage(np.array([[0.0, 1.0], [0.0, 1.0]]), spacing=0.5)
    assert_allclose(gradient(u)[0][:, 0], [2.0, 2.0])


def test_divergence_is_negative_adjoint(rng):
    for _ in range(100):
        shape = tuple(rng.integers(1, 9, size=2))
        u = rng.standard_normal(shape)
        p = rng.standard_normal((2,) + shape)
        lhs = np.sum(gradient(u) * p)
        rhs = -np.sum(u * divergence(p))
        assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(lhs))


def test_divergence_of_ones_field(rng):
    u = rng.standard_normal((3, 3))
    p = np.ones((2, 3, 3))
    assert inner(gradient(u), p) == pytest.approx(-inner(u, divergence(p)), abs=1e-12)


def test_laplacian_matches_five_point_stencil(rng):
    u = rng.standard_normal((4, 4))
    lap = laplacian(u)
    for i in (1, 2):
        for j in (1, 2):
            stencil = u[i - 1, j] + u[i + 1, j] + u[i, j - 1] + u[i, j + 1] - 4 * u[i, j]
            assert lap[i, j] == pytest.approx(stencil, abs=1e-12)


def test_dft_of_delta_and_constant():
    delta = np.zeros((4, 8))
    delta[0, 0] = 1.0
    assert_allclose(np.abs(dft2(delta)), np.full((4, 8), 1.0 / np.sqrt(32)), atol=1e-15)

    spectrum = dft2(np.full((4, 8), 2.0))
    assert spectrum[0, 0] == pytest.approx(2.0 * np.sqrt(32))
    spectrum[0, 0] = 0.0
    assert np.max(np.abs(spectrum)) < 1e-12


def test_dft_roundtrip_and_parseval(rng):
    u = rng.standard_normal((16, 16))
    assert np.max(np.abs(idft2(dft2(u)) - u)) < 1e-10
    assert norm(dft2(u)) == pytest.approx(norm(u), rel=1e-10)


def test_containers_reject_bad_data():
    with pytest.raises(GridError):
        GridImage(np.array([[np.nan, 1.0]]))
    with pytest.raises(GridError):
        GridImage(np.zeros((2, 2)), spacing=0.0)
    with pytest.raises(GridError):
        VectorField(np.zeros((3, 2, 2)))


def test_zero_noise_is_identity(rng):
    u = rng.random((8, 8))
    assert np.array_equal(add_noise(u, NoiseSpec("gaussian", 0.0, 5)), u)


def test_noise_is_deterministic(rng):
    u = rng.random((8, 8))
    for kind, level in (("gaussian", 0.3), ("poisson", 0.05), ("impulse", 0.2)):
        noise_spec = NoiseSpec(kind, level, 99)
        assert np.array_equal(add_noise(u, noise_spec), add_noise(u, noise_spec))


def test_gaussian_noise_statistics():
    noisy = add_noise(np.zeros((64, 64)), NoiseSpec("gaussian", 0.1, 2024))
    assert 0.09 <= np.std(noisy) <= 0.11


def test_noise_on_container_returns_container():
    noisy = add_noise(GridImage(np.zeros((4, 4)), spacing=2.0), NoiseSpec("gaussian", 0.1, 1))
    assert isinstance(noisy, GridImage)
    assert noisy.spacing == 2.0


def test_poisson_rejects_negative_input():
    with pytest.raises(NegativeIntensity):
        add_noise(-np.ones((2, 2)), NoiseSpec("poisson", 1.0, 0))


def test_impulse_corrupts_requested_fraction(rng):
    u = rng.uniform(0.2, 0.8, size=(20, 20))
    noisy = add_noise(u, NoiseSpec("impulse", 0.25, 7))
    changed = noisy != u
    assert 98 <= changed.sum() <= 100
    assert set(np.unique(noisy[changed])) <= {u.min(), u.max()}
    assert np.sum((noisy == u.min()) | (noisy == u.max())) >= 100


def test_noise_spec_validation():
    with pytest.raises(GridError):
        NoiseSpec("gaussian", -1.0, 0)
    with pytest.raises(GridError):
        NoiseSpec("impulse", 1.5, 0)


def test_splitmix_uniforms_in_open_interval():
    u = SplitMix64(0).uniform(10000)
    assert u.min() > 0.0 and u.max() < 1.0
    assert abs(u.mean() - 0.5) < 0.02


def test_pgm_scaling(tmp_path):
    u = np.array([[0.0, 0.5], [1.0, 0.25]])
    path = write_pgm(u, tmp_path / "u.pgm")
    assert path.read_text().splitlines()[:3] == ["P2", "2 2", "255"]
    back = read_pgm(path).data
    assert_allclose(back, np.round(255 * u) / 255)


def test_csv_image_preserves_float64(tmp_path, rng):
    u = rng.standard_normal((3, 5))
    path = write_csv_image(u, tmp_path / "u.csv")
    assert np.array_equal(read_csv_image(path).data, u)
