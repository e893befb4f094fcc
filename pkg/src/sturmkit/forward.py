"""Forward spectral problem for -y'' + v(x) y = lambda y with Dirichlet
boundary conditions on [0, 1].

The normalized solution phi(x, lambda) has phi(0) = 0, phi'(0) = 1; the
characteristic function w(lambda) = phi(1, lambda) vanishes exactly at
the Dirichlet eigenvalues lambda_1 < lambda_2 < ...  Spectral data per
eigenvalue:

    mu_n    = lambda_n - pi^2 n^2 - mean(v)      (asymptotic remainder)
    nu_n    = log((-1)^n phi'(1, lambda_n))      (norming constant)
    alpha_n = int_0^1 phi(x, lambda_n)^2 dx      (normalizing constant)

alpha_n is cross-checked against the endpoint identity
alpha_n = (d/dlambda phi)(1, lambda_n) * phi'(1, lambda_n).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from math import ceil, pi, sqrt

import numpy as np

from ._propagator import propagate_endpoint, propagate_trajectory
from ._quadrature import (
    cumulative_integral,
    gauss_point_values,
    simpson_weights,
)
from .errors import (
    BracketingError,
    ConsistencyError,
    DomainError,
    InputError,
    ResolutionError,
)
from .potential import GridFunction, lp_norm

LAMBDA_CAP = 1e8
# grid nodes per oscillation wavelength demanded of callers
_NODES_PER_WAVELENGTH = 16
# refinement target for quadrature of phi^2: (omega * h / r) below this
# keeps the relative Simpson error of alpha under ~1e-7
_ALPHA_PHASE_STEP = 0.0326


@dataclass(frozen=True)
class CauchySolution:
    """Solution of the initial value problem at one spectral parameter."""

    lam: float
    y: GridFunction
    dy: GridFunction


@dataclass(frozen=True)
class Eigenpair:
    """One record of Dirichlet spectral data."""

    n: int
    lam: float
    mu: float
    nu: float
    alpha: float
    alpha_cross: float


def required_grid(lam: float) -> int:
    """Smallest admissible n_grid for the given spectral parameter."""
    return ceil(_NODES_PER_WAVELENGTH * sqrt(max(lam, 1.0)) / (2.0 * pi))


def _check_resolution(n_grid: int, lam: float) -> None:
    if abs(lam) > LAMBDA_CAP:
        raise ResolutionError(f"|lambda| = {abs(lam):g} exceeds the supported cap {LAMBDA_CAP:g}")
    need = required_grid(lam)
    if n_grid < need:
        raise ResolutionError(
            f"n_grid={n_grid} cannot resolve lambda={lam:g}; need n_grid >= {need}"
        )


def integrate_cauchy(v: GridFunction, lam: float, y0: float = 0.0, dy0: float = 1.0) -> CauchySolution:
    """Integrate the initial value problem across [0, 1] on v's grid.

    Fourth-order accurate; exact (to rounding) for constant potentials.
    """
    _check_resolution(v.n_grid, lam)
    v1, v2 = gauss_point_values(v.samples)
    y, dy = propagate_trajectory(v1, v2, np.array([float(lam)]), v.h, y0, dy0)
    return CauchySolution(float(lam), GridFunction(v.n_grid, y[0]), GridFunction(v.n_grid, dy[0]))


def char_w(v: GridFunction, lam: float) -> float:
    """Characteristic function w(lambda) = phi(1, lambda, v)."""
    _check_resolution(v.n_grid, lam)
    v1, v2 = gauss_point_values(v.samples)
    y, _ = propagate_endpoint(v1, v2, np.array([float(lam)]), v.h)
    return float(y[0])


def series_phi(v: GridFunction, lam: float, terms: int) -> tuple[float, float]:
    """Evaluate phi(1, lambda) by the iterated-integral series with a
    certified tail bound.

    The series starts from phi_0(x) = sin(sqrt(lam) x)/sqrt(lam) and each
    further term convolves the previous one against phi_0 weighted by v.
    The k-th term is bounded by ||v||_1^k / (k! lam^((k+1)/2)), so the
    truncation error after ``terms`` terms is summed in closed form from
    the exponential remainder.  Only lambda > 0 is supported; the bound
    degenerates otherwise.

    Returns ``(value, tail_bound)``.
    """
    if lam <= 0.0:
        raise DomainError("series evaluation requires lambda > 0")
    if terms < 0:
        raise InputError("terms must be non-negative")
    _check_resolution(v.n_grid, lam)
    rt = sqrt(lam)
    x = v.x
    sin_rx = np.sin(rt * x)
    cos_rx = np.cos(rt * x)
    g = sin_rx / rt
    total = g[-1]
    for _ in range(terms):
        u = g * v.samples
        cum_c = cumulative_integral(cos_rx * u, v.h)
        cum_s = cumulative_integral(sin_rx * u, v.h)
        g = (sin_rx * cum_c - cos_rx * cum_s) / rt
        total += g[-1]
    # remainder of sum_k z^k / k! beyond the last retained term
    z = lp_norm(v, 1.0) / rt
    term = 1.0
    for k in range(1, terms + 1):
        term *= z / k
    tail = 0.0
    k = terms + 1
    while True:
        term *= z / k
        tail += term
        if term <= 1e-30 * (tail + 1.0) or k > terms + 200:
            break
        k += 1
    return float(total), float(tail / rt)


def _mean(v: GridFunction) -> float:
    return float(simpson_weights(v.n_grid) @ v.samples)


def _bisect_refine(wfun, lo, hi, flo, rel=1e-10):
    """Vectorized bisection to a relative bracket width, then guarded
    Newton polish with a central-difference derivative."""
    lo = lo.copy()
    hi = hi.copy()
    flo = flo.copy()
    for _ in range(64):
        width = hi - lo
        scale = 1.0 + np.abs(lo)
        if np.all(width <= rel * scale):
            break
        mid = 0.5 * (lo + hi)
        fm = wfun(mid)
        go_left = np.sign(fm) == np.sign(flo)
        lo = np.where(go_left, mid, lo)
        flo = np.where(go_left, fm, flo)
        hi = np.where(go_left, hi, mid)
    lam = 0.5 * (lo + hi)
    flam = wfun(lam)
    for _ in range(6):
        scale = 1.0 + np.abs(lam)
        s = 1e-6 * scale
        dw = (wfun(lam + s) - wfun(lam - s)) / (2.0 * s)
        with np.errstate(divide="ignore", invalid="ignore"):
            step = np.where(dw != 0.0, -flam / dw, 0.0)
        cand = np.clip(lam + step, lo, hi)
        fcand = wfun(cand)
        better = np.abs(fcand) <= np.abs(flam)
        lam = np.where(better, cand, lam)
        flam = np.where(better, fcand, flam)
        if np.max(np.abs(step) / scale) <= 1e-14:
            break
    return lam


def find_eigenvalues(v: GridFunction, count: int, guesses: np.ndarray | None = None) -> np.ndarray:
    """The ``count`` smallest Dirichlet eigenvalues, strictly increasing.

    Default bracketing probes w at the midpoint parameters
    pi^2 (n + 1/2)^2 + mean(v), whose signs alternate for a simple
    spectrum near its asymptotic layout.  When the sign pattern fails
    (strongly displaced spectra), the search falls back to a scan with
    step pi^2/4 starting below the variational bound pi^2 + min(v).
    Callers that know approximate locations can pass ``guesses`` to
    bracket each root directly.
    """
    if count < 1:
        raise InputError("count must be >= 1")
    if count > 128:
        raise InputError("spectra beyond the first 128 eigenvalues are unsupported")
    vhat0 = _mean(v)
    top = pi**2 * (count + 0.5) ** 2 + vhat0
    _check_resolution(v.n_grid, top)
    v1, v2 = gauss_point_values(v.samples)
    h = v.h

    def wfun(lams):
        y, _ = propagate_endpoint(v1, v2, lams, h)
        return y

    lo = hi = flo = None
    if guesses is not None:
        g = np.asarray(guesses, dtype=float)
        if len(g) < count or np.any(np.diff(g) <= 0):
            raise InputError("guesses must be strictly increasing with at least one entry per eigenvalue")
        gaps = np.diff(g[: count + 1])
        first_gap = gaps[0] if len(gaps) else 3.0 * pi**2
        lo = np.empty(count)
        hi = np.empty(count)
        lo[0] = g[0] - max(1.0, 0.5 * first_gap)
        lo[1:] = 0.5 * (g[: count - 1] + g[1:count])
        hi[:-1] = lo[1:]
        if len(g) > count:
            # an extra guess caps the last bracket below the next eigenvalue
            hi[-1] = 0.5 * (g[count - 1] + g[count])
        else:
            hi[-1] = g[count - 1] + 0.5 * pi**2 * (2 * count + 1)
        flo = wfun(lo)
        fhi = wfun(hi)
        if np.any(np.sign(flo) == np.sign(fhi)) or np.any(flo == 0.0) or np.any(fhi == 0.0):
            lo = None  # guesses unusable, fall through to the default strategy

    if lo is None:
        probes = pi**2 * (np.arange(count + 1) + 0.5) ** 2 + vhat0
        wp = wfun(probes)
        expected = (-1.0) ** np.arange(count + 1)
        if np.all(np.sign(wp) == expected):
            lo, hi = probes[:-1], probes[1:]
            flo = wp[:-1]
        else:
            # variational bounds: pi^2 + min(v) <= lambda_1 and
            # lambda_count <= pi^2 count^2 + max(v)
            lo_bound = pi**2 + float(np.min(v.samples)) - 1.0
            hi_bound = max(probes[-1], pi**2 * count**2 + float(np.max(v.samples)) + 1.0)
            scan = np.arange(lo_bound, hi_bound + pi**2 / 4, pi**2 / 4)
            ws = wfun(scan)
            flip = np.flatnonzero(np.sign(ws[:-1]) != np.sign(ws[1:]))
            if len(flip) < count or np.any(ws == 0.0):
                table = list(zip(probes.tolist(), wp.tolist())) + list(zip(scan.tolist(), ws.tolist()))
                raise BracketingError(
                    f"could not isolate {count} sign changes of the characteristic function",
                    probes=table,
                )
            warnings.warn(
                "midpoint sign pattern failed; eigenvalues bracketed by scanning",
                RuntimeWarning,
                stacklevel=2,
            )
            flip = flip[:count]
            lo, hi = scan[flip], scan[flip + 1]
            flo = ws[flip]

    lams = _bisect_refine(wfun, lo, hi, flo)
    if np.any(np.diff(lams) <= 0):
        raise ConsistencyError("computed eigenvalues are not strictly increasing")

    # oscillation count: phi(., lam) has exactly `count` interior zeros just
    # above lambda_count, so a cluster missed by the bracketing (roots closer
    # than a probe step) turns into a loud diagnostic instead of mislabeled
    # output
    probe = lams[-1] + 1e-6 * (1.0 + abs(lams[-1]))
    traj, _ = propagate_trajectory(v1, v2, np.array([probe]), h)
    seen = _interior_zeros(traj[0])
    if seen != count:
        raise BracketingError(
            f"oscillation count {seen} at lambda = {probe:g} disagrees with the "
            f"{count} roots found; spectrum likely clustered below the probe "
            "resolution (supply guesses to bracket each root)",
            probes=[(float(probe), float(traj[0][-1]))],
        )
    return lams


def _interior_zeros(y: np.ndarray) -> int:
    """Sign changes of a sampled solution on (0, 1), ignoring the pinned
    zero at the left endpoint."""
    s = np.sign(y[1:])
    nz = s != 0.0
    s = s[nz]
    if len(s) < 2:
        return 0
    return int(np.count_nonzero(s[:-1] != s[1:]))


def _alpha_refinement(n_grid: int, lam_max: float) -> int:
    omega_h = sqrt(max(lam_max, 1.0)) / n_grid
    return max(1, ceil(omega_h / _ALPHA_PHASE_STEP))


def spectral_data(
    v: GridFunction, count: int, guesses: np.ndarray | None = None
) -> list[Eigenpair]:
    """Full spectral data (lambda, mu, nu, alpha) for the first eigenvalues.

    nu uses the endpoint derivative of the propagated solution; alpha is
    Simpson quadrature of phi^2 on a lambda-refined trajectory; the
    independent endpoint estimate alpha_cross uses a Richardson-
    extrapolated central difference of w in lambda and must agree with
    alpha to 1e-5 relative, else the eigenvalue search is defective.
    """
    lams = find_eigenvalues(v, count, guesses=guesses)
    v1, v2 = gauss_point_values(v.samples)
    h = v.h
    _, dphi1 = propagate_endpoint(v1, v2, lams, h)
    signs = (-1.0) ** np.arange(1, count + 1)
    signed = signs * dphi1
    if np.any(signed <= 0.0):
        bad = int(np.argmax(signed <= 0.0)) + 1
        raise ConsistencyError(
            f"(-1)^n phi'(1, lambda_n) <= 0 at n={bad}: eigenvalue ordering defect"
        )
    nu = np.log(signed)

    r = _alpha_refinement(v.n_grid, float(lams[-1]))
    f1, f2 = gauss_point_values(v.samples, r)
    traj, _ = propagate_trajectory(f1, f2, lams, h / r)
    alpha = traj**2 @ simpson_weights(v.n_grid * r)

    def wfun(ls):
        y, _ = propagate_endpoint(v1, v2, ls, h)
        return y

    s = 1e-4 * (1.0 + np.abs(lams))
    d_full = (wfun(lams + s) - wfun(lams - s)) / (2.0 * s)
    d_half = (wfun(lams + 0.5 * s) - wfun(lams - 0.5 * s)) / s
    phidot = (4.0 * d_half - d_full) / 3.0
    alpha_cross = phidot * dphi1

    rel = np.abs(alpha - alpha_cross) / alpha
    if np.any(alpha <= 0.0) or np.any(rel > 1e-5):
        bad = int(np.argmax(rel)) + 1
        raise ConsistencyError(
            f"normalizing-constant cross-check failed at n={bad}: "
            f"alpha={alpha[bad - 1]:.6e}, endpoint estimate={alpha_cross[bad - 1]:.6e}"
        )

    vhat0 = _mean(v)
    ns = np.arange(1, count + 1)
    mu = lams - pi**2 * ns**2 - vhat0
    return [
        Eigenpair(int(n), float(l), float(m), float(nv), float(a), float(ac))
        for n, l, m, nv, a, ac in zip(ns, lams, mu, nu, alpha, alpha_cross)
    ]
