import numpy as np
import pytest
from numpy.testing import assert_allclose

from core.errors import DenoiserError, SingularDenoiser, VariProError
from Module_1_Grid import norm
from Module_2_Operators import gaussian_kernel, make_blur, make_identity, make_mask
from Module_4_Fidelity import DataTerm, Fidelity
from Module_5_Solvers import AdmmSolver, SolverConfig, solve_normal_equations
from Module_6_Regularizers import Regularizer, RegularizerProx
from Module_7A_PlugAndPlay import (DenseDenoiser, SpectralDenoiser, SpectralFilter, apply_spectral_filter,
                                   convergence_sweep, denoiser_regularizer_value, filter_admissibility,
                                   gaussian_denoiser, linear_rule, minimum_regularizer_solution, noisy_data,
                                   pnp_admm, pnp_fbs, prox_by_cg, sweep_is_monotone, tikhonov_denoiser,
                                   verify_prox_characterization)
from Module_9_Metrics import make_phantom

TIGHT = SolverConfig(max_iters=2000, tol=1e-10)


def sweep_setup():
    A = make_blur(gaussian_kernel(3, 0.6), (16, 16))
    D = gaussian_denoiser((16, 16), 1.0)
    u_true = np.array(make_phantom("smooth", 16).data)
    return A, D, u_true


def test_tikhonov_denoiser_regularizer():
    D = tikhonov_denoiser(0.5, (4, 4))
    assert_allclose(D.eigenvalues, 1.0 / 1.5)
    x = np.arange(16.0).reshape(4, 4)
    assert denoiser_regularizer_value(D, x) == pytest.approx(0.25 * norm(x) ** 2)
    with pytest.raises(DenoiserError):
        tikhonov_denoiser(-1.0, (4, 4))


def test_singular_denoiser_has_no_regularizer():
    with pytest.raises(SingularDenoiser):
        SpectralDenoiser(np.zeros((3, 3))).regularizer_weights()


def test_dense_and_spectral_representations_agree(rng):
    D = gaussian_denoiser((4, 4), 0.8)
    dense = D.to_dense()
    x = rng.standard_normal((4, 4))
    assert_allclose(dense.apply(x), D.apply(x), atol=1e-12)
    assert_allclose(np.sort(dense.eigenvalues), np.sort(D.eigenvalues), atol=1e-12)
    assert dense.symmetric_defect() < 1e-12


def test_canonical_filter_scales_regularizer(rng):
    D = gaussian_denoiser((8, 8), 1.0)
    assert_allclose(apply_spectral_filter(D, SpectralFilter(1.0)).eigenvalues, D.eigenvalues, atol=1e-15)
    assert_allclose(apply_spectral_filter(D, SpectralFilter(0.0)).eigenvalues, 1.0, atol=1e-15)

    v = rng.standard_normal((8, 8))
    for tau in (0.3, 2.0):
        filtered = apply_spectral_filter(D, SpectralFilter(tau)).apply(v)
        assert_allclose(prox_by_cg(D, v, tau), filtered, atol=1e-8)


def test_prox_characterization_certificate(logger):
    report = verify_prox_characterization(gaussian_denoiser((8, 8), 1.0), logger=logger)
    assert report["passed"]
    assert report["max_deviation"] < 1e-8

    skew = np.eye(4) + np.triu(np.full((4, 4), 0.1), 1)
    assert not verify_prox_characterization(DenseDenoiser(skew, (2, 2)), logger=logger)["passed"]
    assert not verify_prox_characterization(SpectralDenoiser(np.zeros((2, 2))), logger=logger)["passed"]


def test_filter_admissibility():
    spectrum = gaussian_denoiser((8, 8), 1.0).eigenvalues
    report = filter_admissibility(SpectralFilter(0.5), spectrum)
    assert report["admissible"]
    assert report["variation"] == pytest.approx(0.0, abs=1e-9)

    frozen = SpectralFilter(0.5, "tabulated", lambda lam, tau: lam)
    assert not filter_admissibility(frozen, spectrum)["admissible"]
    assert not filter_admissibility(SpectralFilter(0.0), spectrum)["admissible"]
    assert filter_admissibility(SpectralFilter(0.5), np.ones(4))["admissible"]


def test_pnp_admm_matches_normal_equations(rng):
    A = make_blur(gaussian_kernel(3, 0.6), (8, 8))
    y = A.apply(rng.random((8, 8)))
    D = tikhonov_denoiser(0.5, (8, 8))
    u, trace = pnp_admm(A, y, D, SpectralFilter(0.2), TIGHT)
    assert trace.method == "pnp_admm"
    assert_allclose(u, solve_normal_equations(A, A.adjoint(y), 0.1), atol=1e-7)


def test_pnp_admm_equals_classical_admm(rng, logger):
    A = make_blur(gaussian_kernel(3, 0.6), (8, 8))
    y = A.apply(rng.random((8, 8)))
    D = tikhonov_denoiser(0.5, (8, 8))
    cfg = SolverConfig(max_iters=30, tol=0.0)
    u_pnp, _ = pnp_admm(A, y, D, SpectralFilter(0.2), cfg, logger=logger)

    R = Regularizer("tikhonov_l2", 0.1)
    u_admm, _, _, _ = AdmmSolver(logger).run(DataTerm(Fidelity("l2", y), A), RegularizerProx(R, logger),
                                             A.adjoint(y), cfg)
    assert_allclose(u_pnp, u_admm, atol=1e-8)


def test_pnp_fbs_one_step_solution(rng):
    y = rng.random((6, 6))
    D = tikhonov_denoiser(1.0, (6, 6))
    u, trace = pnp_fbs(make_identity((6, 6)), y, D, SpectralFilter(0.5), SolverConfig(tol=1e-12, max_iters=50))
    assert trace.converged
    assert_allclose(u, y / 1.5, atol=1e-12)


def test_minimum_regularizer_solution_on_mask(rng):
    mask = np.zeros((4, 4))
    mask[:, :2] = 1.0
    A = make_mask(mask)
    u = rng.random((4, 4))
    u_dagger = minimum_regularizer_solution(A, A.apply(u), tikhonov_denoiser(1.0, (4, 4)))
    assert_allclose(u_dagger, mask * u, atol=1e-10)


def test_noisy_data_level(rng):
    A = make_identity((16, 16))
    u = rng.random((16, 16))
    assert np.array_equal(noisy_data(A, u, 0.0, 1), u)
    noise = noisy_data(A, u, 0.1, 1) - u
    assert 0.07 < norm(noise) < 0.13
    assert np.array_equal(noisy_data(A, u, 0.1, 1), noisy_data(A, u, 0.1, 1))


def test_sweep_rejects_bad_levels():
    A, D, u_true = sweep_setup()
    with pytest.raises(VariProError):
        convergence_sweep(A, u_true, D, linear_rule(1.0), [0.01, 0.1])
    with pytest.raises(VariProError):
        convergence_sweep(A, u_true, D, linear_rule(1.0), [0.1, 0.0, 0.01])


@pytest.mark.slow
def test_linear_rule_is_convergent():
    A, D, u_true = sweep_setup()
    levels = [0.1 * 0.5 ** k for k in range(6)]
    table = convergence_sweep(A, u_true, D, linear_rule(1.0), levels, seed=1)
    assert list(table.columns) == ["delta", "tau", "err_vs_udagger", "err_vs_utrue", "iters"]
    assert_allclose(table["tau"], levels)
    assert sweep_is_monotone(table)
    assert table["err_vs_udagger"].iloc[-1] < 0.25 * table["err_vs_udagger"].iloc[0]


@pytest.mark.slow
def test_oversized_rule_is_not_convergent():
    A, D, u_true = sweep_setup()
    levels = [0.1 * 0.5 ** k for k in range(6)]
    table = convergence_sweep(A, u_true, D, linear_rule(1e6), levels, seed=1)
    assert not sweep_is_monotone(table)


def test_exact_data_level_recovers_least_squares_solution():
    A, D, u_true = sweep_setup()
    table = convergence_sweep(A, u_true, D, linear_rule(1.0), [0.05, 0.0], seed=3)
    assert table["tau"].iloc[-1] == 0.0
    assert table["err_vs_udagger"].iloc[-1] < 1e-6


def random_dense_denoiser(rng, shape=(3, 3)):
    n = int(np.prod(shape))
    Q, _ = np.linalg.qr(rng.standard_normal((n, n)))
    eigenvalues = np.linspace(0.2, 1.0, n)
    return DenseDenoiser((Q * eigenvalues) @ Q.T, shape)


@pytest.mark.parametrize("tau", [0.5, 2.0, 10.0])
def test_filtered_dense_denoiser_matches_matrix_formula(rng, tau):
    D = random_dense_denoiser(rng)
    identity = np.eye(D.matrix.shape[0])
    expected = np.linalg.inv(tau * np.linalg.inv(D.matrix) - (tau - 1.0) * identity)
    filtered = apply_spectral_filter(D, SpectralFilter(tau))
    assert_allclose(filtered.matrix, expected, atol=1e-12)
    assert np.linalg.norm(filtered.matrix @ D.matrix - D.matrix @ filtered.matrix) < 1e-12


def test_canonical_filter_range_and_monotonicity():
    lam = np.linspace(0.01, 1.0, 200)
    taus = (0.1, 0.5, 1.0, 2.0, 10.0)
    rows = [SpectralFilter(tau).values(lam) for tau in taus]
    for g in rows:
        assert np.all(g > 0.0) and np.all(g <= 1.0 + 1e-15)
        assert np.all(np.diff(g) > 0.0)
        assert g[-1] == pytest.approx(1.0)
    for weaker, stronger in zip(rows, rows[1:]):
        assert np.all(stronger[:-1] < weaker[:-1])


def test_identity_problem_with_identity_denoiser_returns_data(rng):
    y = rng.random((6, 6))
    A = make_identity((6, 6))
    D = tikhonov_denoiser(0.0, (6, 6))
    u, trace = pnp_admm(A, y, D, SpectralFilter(1.0), TIGHT)
    assert trace.converged
    assert_allclose(u, y, atol=1e-10)
    u, _ = pnp_fbs(A, y, D, SpectralFilter(1.0), TIGHT)
    assert_allclose(u, y, atol=1e-10)


def test_convolutional_denoiser_deblur_converges():
    A = make_blur(gaussian_kernel(3, 0.6), (32, 32))
    y = A.apply(np.array(make_phantom("smooth", 32).data))
    D = gaussian_denoiser((32, 32), 1.0)
    _, trace = pnp_admm(A, y, D, SpectralFilter(0.5), SolverConfig(max_iters=500, tol=1e-6))
    assert trace.converged
    assert trace.iterations <= 500
    assert max(trace.last["primal_res"], trace.last["dual_res"]) < 1e-6
