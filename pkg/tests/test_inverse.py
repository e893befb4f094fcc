import numpy as np
import pytest

from sturmkit import (
    AdmissibilityError,
    GridFunction,
    InputError,
    ReconstructionOptions,
    SpectralTarget,
    alpha_to_nu,
    char_w,
    find_eigenvalues,
    forward_target,
    global_reconstruct,
    lp_norm,
    nu_to_alpha,
    reconstruct,
    reconstruct_even,
    reconstruct_general,
    spectral_data,
    wdot_magnitude,
)

from conftest import grid_fn

PI2 = np.pi**2


class TestSpectralTarget:
    def test_validation(self):
        with pytest.raises(InputError):
            SpectralTarget(0.0, np.zeros(0))
        with pytest.raises(InputError):
            SpectralTarget(np.nan, np.zeros(4))
        with pytest.raises(InputError):
            SpectralTarget(0.0, np.zeros(4), nu_scaled=np.zeros(3))
        with pytest.raises(InputError):
            SpectralTarget(0.0, np.zeros(4), p=0.5)

    def test_lambda_targets(self):
        t = SpectralTarget(1.0, np.array([2.0, -1.0]))
        assert np.allclose(t.lambda_targets(), [PI2 + 3.0, 4 * PI2])


class TestReconstructEven:
    def test_zero_target_is_zero_potential(self):
        target = SpectralTarget(0.0, np.zeros(8))
        v, rep = reconstruct_even(target)
        assert rep.converged
        assert rep.residual_history[0] < 1e-10
        assert np.abs(v.samples).max() < 1e-10
        assert rep.iterations == len(rep.residual_history)

    def test_constant_target(self):
        c = -1.3
        target = SpectralTarget(c, np.zeros(8))
        v, rep = reconstruct_even(target)
        assert rep.converged
        assert np.abs(v.samples - c).max() < 1e-8

    def test_round_trip_two_cosines(self):
        v_true = grid_fn(lambda x: 0.3 * np.cos(2 * np.pi * x) + 0.1 * np.cos(4 * np.pi * x))
        target = forward_target(v_true, 32)
        assert target.nu_scaled is None
        v, rep = reconstruct_even(target)
        assert rep.converged
        assert lp_norm(v - v_true, 2.0) <= 1e-4

    def test_rejects_norming_data(self):
        target = SpectralTarget(0.0, np.zeros(4), nu_scaled=np.ones(4))
        with pytest.raises(InputError):
            reconstruct_even(target)

    def test_rejects_inadmissible(self):
        mu = np.zeros(8)
        mu[1] = -3 * PI2 - 1.0
        with pytest.raises(AdmissibilityError):
            reconstruct_even(SpectralTarget(0.0, mu))

    def test_non_convergence_reported_not_raised(self):
        v_true = grid_fn(lambda x: 0.4 * np.cos(2 * np.pi * x))
        target = forward_target(v_true, 16)
        v, rep = reconstruct_even(target, ReconstructionOptions(max_iter=2))
        assert not rep.converged
        assert rep.iterations == 2
        assert len(rep.residual_history) == 2
        assert any("best iterate" in w for w in rep.warnings)

    def test_damped_iteration_still_converges(self):
        v_true = grid_fn(lambda x: 0.3 * np.cos(2 * np.pi * x))
        target = forward_target(v_true, 16)
        plain = reconstruct_even(target)[1].iterations
        v, rep = reconstruct_even(target, ReconstructionOptions(damping=0.5))
        assert rep.converged
        assert rep.iterations > plain  # damping trades sweeps for stability
        assert lp_norm(v - v_true, 2.0) <= 1e-4


class TestReconstructGeneral:
    def test_zero_target(self):
        target = SpectralTarget(0.0, np.zeros(8), nu_scaled=np.zeros(8))
        v, rep = reconstruct_general(target)
        assert rep.converged
        assert np.abs(v.samples).max() < 1e-8

    def test_round_trip_pure_sine(self):
        v_true = grid_fn(lambda x: 0.2 * np.sin(2 * np.pi * x))
        target = forward_target(v_true, 32)
        assert target.nu_scaled is not None
        v, rep = reconstruct_general(target)
        assert rep.converged
        assert lp_norm(v - v_true, 2.0) <= 1e-4

    def test_round_trip_mixed(self):
        v_true = grid_fn(lambda x: 0.3 * np.cos(2 * np.pi * x) + 0.2 * np.sin(4 * np.pi * x))
        target = forward_target(v_true, 32)
        v, rep = reconstruct_general(target)
        assert rep.converged
        assert lp_norm(v - v_true, 2.0) <= 1e-4

    def test_requires_norming_data(self):
        with pytest.raises(InputError):
            reconstruct_general(SpectralTarget(0.0, np.zeros(4)))

    def test_dispatch_helper(self):
        v_sym, _ = reconstruct(SpectralTarget(0.5, np.zeros(6)))
        assert np.abs(v_sym.samples - 0.5).max() < 1e-8
        v_gen, rep = reconstruct(SpectralTarget(0.0, np.zeros(6), nu_scaled=np.zeros(6)))
        assert rep.converged


class TestGlobalReconstruct:
    def test_all_zero_passes_through(self):
        target = SpectralTarget(0.0, np.zeros(8))
        v, rep = global_reconstruct(target, 3)
        assert rep.converged
        assert np.abs(v.samples).max() < 1e-10

    def test_large_head_datum(self):
        mu = np.zeros(8)
        mu[0] = 8.0
        v, rep = global_reconstruct(SpectralTarget(0.0, mu), 1)
        assert rep.converged
        lams = find_eigenvalues(v, 8)
        expected = PI2 * np.arange(1, 9) ** 2
        assert abs(lams[0] - (expected[0] + 8.0)) < 1e-5
        assert np.abs(lams[1:] - expected[1:]).max() < 1e-6

    def test_mean_and_two_heads(self):
        mu = np.zeros(8)
        mu[0], mu[1] = 3.0, -2.0
        v, rep = global_reconstruct(SpectralTarget(1.0, mu), 2)
        assert rep.converged
        lams = find_eigenvalues(v, 8)
        expected = PI2 * np.arange(1, 9) ** 2 + 1.0
        expected[0] += 3.0
        expected[1] -= 2.0
        assert np.abs(lams - expected).max() < 1e-5

    def test_head_bounds_checked(self):
        with pytest.raises(InputError):
            global_reconstruct(SpectralTarget(0.0, np.zeros(4)), 9)

    def test_general_pipeline_places_norming_head(self):
        mu = np.zeros(8)
        mu[0] = 6.0
        nu_scaled = np.zeros(8)
        nu_scaled[0] = 0.8  # nu_1 target of 0.8 / (2 pi)
        v, rep = global_reconstruct(SpectralTarget(0.0, mu, nu_scaled), 1)
        assert rep.converged
        pairs = spectral_data(v, 8)
        lams = np.array([p.lam for p in pairs])
        expected = PI2 * np.arange(1, 9) ** 2
        assert abs(lams[0] - (expected[0] + 6.0)) < 1e-5
        assert np.abs(lams[1:] - expected[1:]).max() < 1e-6
        nus = np.array([p.nu for p in pairs])
        assert abs(nus[0] - 0.8 / (2 * np.pi)) < 1e-5
        assert np.abs(nus[1:]).max() < 1e-5


class TestWdotMagnitude:
    def test_free_spectrum_n1(self):
        lams = PI2 * np.arange(1, 65) ** 2.0
        assert abs(wdot_magnitude(lams, 1, 0.0) - 1.0 / (2 * PI2)) < 1e-6

    def test_free_spectrum_n3(self):
        lams = PI2 * np.arange(1, 65) ** 2.0
        assert abs(wdot_magnitude(lams, 3, 0.0) - 1.0 / (18 * PI2)) < 1e-6

    def test_matches_finite_difference_derivative(self, cos_512):
        # independent endpoint-derivative estimate of dw/dlambda at lambda_1
        lams = find_eigenvalues(cos_512, 32)
        lam1 = lams[0]
        s = 1e-4 * (1 + abs(lam1))
        d_full = (char_w(cos_512, lam1 + s) - char_w(cos_512, lam1 - s)) / (2 * s)
        d_half = (char_w(cos_512, lam1 + s / 2) - char_w(cos_512, lam1 - s / 2)) / s
        fd = abs((4 * d_half - d_full) / 3)
        mu_bar = float(np.mean(lams[-8:] - PI2 * np.arange(25, 33) ** 2))
        wd = wdot_magnitude(lams, 1, mu_bar)
        assert abs(fd - wd) / fd < 1e-4

    def test_rejects_bad_input(self):
        with pytest.raises(InputError):
            wdot_magnitude(np.array([1.0, 1.0, 2.0]), 1)
        with pytest.raises(InputError):
            wdot_magnitude(PI2 * np.arange(1, 5) ** 2.0, 5)


class TestConversions:
    def test_free_data_gives_zero_nu(self):
        lams = PI2 * np.arange(1, 65) ** 2.0
        alphas = 1.0 / (2 * PI2 * np.arange(1, 65) ** 2.0)
        nus = alpha_to_nu(lams, alphas)
        assert np.abs(nus[:16]).max() < 1e-6

    def test_mutual_inverse(self):
        rng = np.random.default_rng(3)
        lams = PI2 * np.arange(1, 33) ** 2.0 + rng.uniform(-0.3, 0.3, 32)
        alphas = 1.0 / (2 * PI2 * np.arange(1, 33) ** 2.0) * np.exp(rng.uniform(-0.5, 0.5, 32))
        back = nu_to_alpha(lams, alpha_to_nu(lams, alphas))
        assert np.abs(back / alphas - 1.0).max() < 1e-10

    def test_matches_forward_norming_constants(self):
        v = grid_fn(lambda x: np.cos(2 * np.pi * x) + np.sin(2 * np.pi * x), 1024)
        pairs = spectral_data(v, 64)
        lams = np.array([p.lam for p in pairs])
        alphas = np.array([p.alpha for p in pairs])
        nus = np.array([p.nu for p in pairs])
        est = alpha_to_nu(lams, alphas)
        assert np.abs(est[:6] - nus[:6]).max() < 1e-4

    def test_rejects_nonpositive_alpha(self):
        lams = PI2 * np.arange(1, 5) ** 2.0
        with pytest.raises(InputError):
            alpha_to_nu(lams, np.array([1.0, -1.0, 1.0, 1.0]))


class TestQuadraticSmallness:
    def test_nonlinear_part_scales_quadratically(self):
        def nonlinear_norm(eps):
            v = grid_fn(lambda x: eps * np.cos(2 * np.pi * x))
            pairs = spectral_data(v, 32)
            from sturmkit import TrigSeries, fourier_analyze, fourier_synthesize

            series = fourier_analyze(v, 32)
            mu_t = np.array([p.mu for p in pairs]) + series.cos_coeffs
            f = fourier_synthesize(TrigSeries(0.0, -mu_t, np.zeros(32)), 512)
            return lp_norm(f, 2.0)

        for eps in (0.2, 0.1):
            ratio = nonlinear_norm(eps) / nonlinear_norm(eps / 2)
            assert 3.5 <= ratio <= 4.5
