"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines.
"""

import time

import numpy as np
import pytest

import sturmkit as sk
from sturmkit import (
    SpectralTarget,
    TrigSeries,
    alpha_to_nu,
    check_admissible,
    find_eigenvalues,
    forward_target,
    fourier_analyze,
    fourier_synthesize,
    global_reconstruct,
    lp_norm,
    marchenko_tail_identity,
    nu_to_alpha,
    parity_split,
    reconstruct_even,
    reconstruct_general,
    series_phi,
    shift_eigenvalue,
    shift_norming,
    spectral_data,
    wdot_magnitude,
)
from sturmkit.forward import char_w
from sturmkit.potential import GridFunction

from conftest import grid_fn
from oracles import numerov_eigenvalues

PI2 = np.pi**2


def _report(num, ok, detail):
    print(f"\n[criterion {num:2d}] {'PASS' if ok else 'FAIL'}: {detail}")
    assert ok, f"criterion {num} failed: {detail}"


def test_criterion_01_zero_potential_exactness(zero_512):
    start = time.perf_counter()
    pairs = spectral_data(zero_512, 20)
    elapsed = time.perf_counter() - start
    lam_err = max(abs(p.lam - PI2 * p.n**2) for p in pairs)
    nu_err = max(abs(p.nu) for p in pairs)
    alpha_err = max(abs(p.alpha - 1.0 / (2 * PI2 * p.n**2)) for p in pairs)
    ok = lam_err <= 1e-8 and nu_err <= 1e-8 and alpha_err <= 1e-8 and elapsed <= 5.0
    _report(
        1,
        ok,
        f"zero potential n<=20: |dlambda|={lam_err:.2e}, |nu|={nu_err:.2e}, "
        f"|dalpha|={alpha_err:.2e}, runtime={elapsed:.2f}s",
    )


def test_criterion_02_matrix_oracle_agreement(cos_512):
    lams = find_eigenvalues(cos_512, 4)
    oracle = numerov_eigenvalues(lambda x: np.cos(2 * np.pi * x), 4)
    err = np.abs(lams - oracle).max()
    _report(2, err <= 1e-5, f"cos(2 pi x) vs 4096-node matrix oracle: max err {err:.2e}")


def test_criterion_03_series_ode_cross_validation():
    potentials = [
        grid_fn(lambda x: 0.5 * np.cos(2 * np.pi * x)),
        grid_fn(lambda x: 1.0 + 0.0 * x),
        grid_fn(lambda x: 1.2 + 0.5 * np.cos(2 * np.pi * x) + 0.3 * np.sin(4 * np.pi * x)),
    ]
    worst = 0.0
    ok = True
    for v in potentials:
        assert lp_norm(v, 1.0) <= 2.0
        for lam in (PI2, 4 * PI2, 9 * PI2):
            value, tail = series_phi(v, lam, 12)
            diff = abs(value - char_w(v, lam))
            worst = max(worst, diff)
            ok = ok and diff <= max(tail, 1e-7)
    _report(3, ok, f"9 (v, lambda) combinations, worst |series - ode| = {worst:.2e}")


def test_criterion_04_asymptotic_decay(cos_512):
    pairs = spectral_data(cos_512, 32)
    series = fourier_analyze(cos_512, 32)
    ns = np.arange(1, 33)
    observed = np.abs(ns * (np.array([p.mu for p in pairs]) + series.cos_coeffs)).max()
    norm1 = lp_norm(cos_512, 1.0)
    bound = 10.0 * norm1**2 * np.exp(norm1)
    _report(4, observed <= bound, f"sup n|mu_n + a_n| = {observed:.3e} <= {bound:.3e}")


def test_criterion_05_quadratic_smallness():
    def nonlinear_norm(eps):
        v = grid_fn(lambda x: eps * np.cos(2 * np.pi * x))
        pairs = spectral_data(v, 32)
        series = fourier_analyze(v, 32)
        mu_tilde = np.array([p.mu for p in pairs]) + series.cos_coeffs
        f = fourier_synthesize(TrigSeries(0.0, -mu_tilde, np.zeros(32)), 512)
        return lp_norm(f, 2.0)

    ratios = []
    ok = True
    for eps in (0.2, 0.1):
        ratio = nonlinear_norm(eps) / nonlinear_norm(eps / 2)
        ratios.append(ratio)
        ok = ok and 3.5 <= ratio <= 4.5
    _report(5, ok, f"nonlinear-part ratios at eps 0.2, 0.1: {ratios[0]:.3f}, {ratios[1]:.3f}")


def test_criterion_06_symmetric_round_trip():
    start = time.perf_counter()
    worst = 0.0
    ok = True
    for a in (0.5, -0.5, 0.25, -0.25):
        for b in (0.5, -0.5, 0.25, -0.25):
            v_true = grid_fn(
                lambda x: a * np.cos(2 * np.pi * x) + b * np.cos(4 * np.pi * x)
            )
            v, rep = reconstruct_even(forward_target(v_true, 32))
            err = lp_norm(v - v_true, 2.0)
            worst = max(worst, err)
            ok = ok and rep.converged and rep.iterations <= 200 and err <= 1e-4
    elapsed = time.perf_counter() - start
    ok = ok and elapsed <= 120.0
    _report(6, ok, f"16 cosine pairs at N=32: worst L2 err {worst:.2e}, total {elapsed:.1f}s")


def test_criterion_07_general_round_trip():
    cases = [
        lambda x: 0.2 * np.sin(2 * np.pi * x),
        lambda x: 0.3 * np.cos(2 * np.pi * x) + 0.2 * np.sin(4 * np.pi * x),
        lambda x: 0.5 * np.cos(4 * np.pi * x) - 0.25 * np.sin(2 * np.pi * x),
        lambda x: 0.1 * np.cos(2 * np.pi * x) + 0.2 * np.sin(2 * np.pi * x) + 0.15 * np.sin(6 * np.pi * x),
    ]
    worst = 0.0
    ok = True
    for fn in cases:
        v_true = grid_fn(fn)
        target = forward_target(v_true, 32, symmetric=False)
        v, rep = reconstruct_general(target)
        err = lp_norm(v - v_true, 2.0)
        worst = max(worst, err)
        ok = ok and rep.converged and err <= 1e-4
    _report(7, ok, f"mixed cos/sin potentials: worst L2 err {worst:.2e}")


def test_criterion_08_darboux_isospectrality(zero_512):
    # eigenvalue shift: only lambda_2 moves, symmetry preserved
    shifted = shift_eigenvalue(zero_512, 2, -2.0)
    lams = find_eigenvalues(shifted, 8)
    expected = PI2 * np.arange(1, 9) ** 2
    expected[1] -= 2.0
    lam_err = np.abs(lams - expected).max()
    odd_norm = np.abs(parity_split(shifted)[1].samples).max()
    nus = np.array([p.nu for p in spectral_data(shifted, 8)])
    nu_drift = np.abs(nus).max()

    # norming shift: only nu_1 moves, by t, spectrum frozen
    t = 0.5
    nshift = shift_norming(zero_512, 1, t)
    lams2 = find_eigenvalues(nshift, 8)
    lam_err2 = np.abs(lams2 - PI2 * np.arange(1, 9) ** 2).max()
    nus2 = np.array([p.nu for p in spectral_data(nshift, 8)])
    nu_err = abs(nus2[0] - t)
    nu_others = np.abs(nus2[1:]).max()

    ok = (
        lam_err <= 1e-6
        and odd_norm <= 1e-8
        and nu_drift <= 1e-5
        and lam_err2 <= 1e-6
        and nu_err <= 1e-5
        and nu_others <= 1e-5
    )
    _report(
        8,
        ok,
        f"eig shift: dlambda {lam_err:.2e}, odd part {odd_norm:.2e}, nu drift {nu_drift:.2e}; "
        f"nu shift: dlambda {lam_err2:.2e}, |nu_1 - t| {nu_err:.2e}, others {nu_others:.2e}",
    )


def test_criterion_09_global_pipeline():
    mu = np.zeros(8)
    mu[0] = 8.0
    v, rep = global_reconstruct(SpectralTarget(0.0, mu), 1)
    lams = find_eigenvalues(v, 8)
    expected = PI2 * np.arange(1, 9) ** 2
    expected[0] += 8.0
    head_err = abs(lams[0] - expected[0])
    tail_err = np.abs(lams[1:] - expected[1:]).max()
    ok = rep.converged and head_err <= 1e-5 and tail_err <= 1e-6
    _report(
        9,
        ok,
        f"mu*_1 = 8 via parking: head err {head_err:.2e}, tail err {tail_err:.2e}",
    )


def test_criterion_10_conversion_identity():
    v = grid_fn(lambda x: np.cos(2 * np.pi * x) + np.sin(2 * np.pi * x), 1024)
    pairs = spectral_data(v, 64)
    lams = np.array([p.lam for p in pairs])
    alphas = np.array([p.alpha for p in pairs])
    nus = np.array([p.nu for p in pairs])
    mu_bar = float(np.mean(lams[-16:] - PI2 * np.arange(49, 65) ** 2))
    rel = max(
        abs(alphas[n - 1] - wdot_magnitude(lams, n, mu_bar) * np.exp(nus[n - 1]))
        / alphas[n - 1]
        for n in range(1, 9)
    )
    back = nu_to_alpha(lams, alpha_to_nu(lams, alphas))
    inv = np.abs(back / alphas - 1.0).max()
    ok = rel <= 1e-4 and inv <= 1e-10
    _report(
        10,
        ok,
        f"alpha = |w'| e^nu rel err {rel:.2e} (n<=8); conversion inverse {inv:.2e}",
    )


def test_criterion_11_tail_identity():
    r16 = marchenko_tail_identity(1.0 / np.arange(1, 17) ** 2.0, 16)
    r32 = marchenko_tail_identity(1.0 / np.arange(1, 33) ** 2.0, 32)
    ok = r16 <= 1e-3 and r32 <= r16
    _report(11, ok, f"identity residual: N=16 {r16:.2e}, N=32 {r32:.2e} (non-increasing)")


def test_criterion_12_admissibility_gate(zero_512, cos_512):
    ok = True
    for v in (
        zero_512,
        cos_512,
        grid_fn(lambda x: 0.3 * np.cos(2 * np.pi * x) + 0.1 * np.cos(4 * np.pi * x)),
        grid_fn(lambda x: np.cos(2 * np.pi * x) + np.sin(2 * np.pi * x)),
    ):
        ok = ok and check_admissible(forward_target(v, 16)).admissible

    mu_a = np.zeros(8)
    mu_a[1] = -3 * PI2 - 1.0
    rep_a = check_admissible(SpectralTarget(0.0, mu_a))
    mu_b = np.zeros(8)
    mu_b[-1] = 2 * PI2 * 8 + PI2 + 1.0
    rep_b = check_admissible(SpectralTarget(0.0, mu_b))
    ok = (
        ok
        and not rep_a.admissible
        and rep_a.first_violation == 1
        and not rep_b.admissible
        and rep_b.first_violation == 8
    )
    _report(
        12,
        ok,
        "forward data admissible for all test potentials; both violating "
        f"targets rejected at indices {rep_a.first_violation} and {rep_b.first_violation}",
    )
