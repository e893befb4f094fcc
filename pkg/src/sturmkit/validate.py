"""Admissibility and consistency diagnostics for spectral data at finite
truncation.

Infinite-sequence class memberships are not decidable from finitely many
numbers; these checks report the decidable content: strict interlacing
of the targeted spectrum (including the boundary to the implicit zero
tail), the observed decay rate of the nonlinear remainders, and a
dual-path evaluation of the remainder-to-sine-transform identity used to
convert between the two kinds of auxiliary spectral data.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import exp, pi
from typing import Optional

import numpy as np

from .forward import find_eigenvalues
from .potential import (
    GridFunction,
    TrigSeries,
    fourier_analyze,
    fourier_synthesize,
    lp_norm,
)
from .errors import InputError
from .inverse import SpectralTarget

# empirical multiple of ||v||_1^2 e^{||v||_1} above which the decay
# diagnostic is flagged; slack absorbs rounding for tiny potentials
_DECAY_FACTOR = 10.0
_DECAY_SLACK = 1e-6


@dataclass
class ValidationReport:
    admissible: bool = True
    first_violation: Optional[int] = None
    decay_constant: Optional[float] = None
    identity_residual: Optional[float] = None
    notes: list[str] = field(default_factory=list)


def check_admissible(target: SpectralTarget) -> ValidationReport:
    """Strict interlacing of pi^2 n^2 + mu0 + mu_n for n = 1..N and across
    the boundary to the zero tail; findings go in the report."""
    values = np.append(target.lambda_targets(), pi**2 * (target.order + 1) ** 2 + target.mu0)
    gaps = np.diff(values)
    report = ValidationReport()
    bad = np.flatnonzero(gaps <= 0.0)
    if len(bad):
        report.admissible = False
        report.first_violation = int(bad[0]) + 1
        report.notes.append(
            f"ordering fails between indices {report.first_violation} and "
            f"{report.first_violation + 1}"
        )
    return report


def asymptotic_decay_check(v: GridFunction, count: int) -> ValidationReport:
    """Observed sup of n |mu_n + a_n(v)| over n <= count.

    The remainder beyond the leading cosine coefficient decays like 1/n
    with a constant controlled by ||v||_1^2 e^{||v||_1}; a note is added
    when the observed constant exceeds that scale by more than a factor
    of ten.
    """
    if count < 1:
        raise InputError("count must be >= 1")
    lams = find_eigenvalues(v, count)
    series = fourier_analyze(v, count)
    ns = np.arange(1, count + 1)
    mu = lams - pi**2 * ns**2 - series.a0
    constant = float(np.abs(ns * (mu + series.cos_coeffs)).max())
    report = ValidationReport(decay_constant=constant)
    norm1 = lp_norm(v, 1.0)
    bound = _DECAY_FACTOR * norm1**2 * exp(norm1)
    if constant > bound + _DECAY_SLACK:
        report.notes.append(
            f"decay constant {constant:.3e} exceeds "
            f"{_DECAY_FACTOR:g} * ||v||_1^2 exp(||v||_1) = {bound:.3e}"
        )
    return report


def _identity_grid(order: int) -> int:
    n = max(2048, 8 * order * order)
    return n + n % 2


def marchenko_tail_identity(mu: np.ndarray, order: int) -> float:
    """Max residual of the two evaluations of the remainder identity.

    Left side, directly from the sequence (inner sums truncated at 4N):

        (1/2pi) ( sum_{m != n} (1/(m-n) - 1/(m+n)) mu_m  -  mu_n / (2n) )

    Right side: the n-th sine coefficient of (1/2 - x) f(x) with
    f = -2 sum mu_m cos(2 pi m x), computed by grid quadrature.  The two
    agree exactly in the untruncated limit; the returned residual is the
    max difference over n <= N/2, where truncation effects are benign.
    """
    m = np.asarray(mu, dtype=float)
    if m.ndim != 1 or len(m) != order:
        raise InputError(f"expected {order} remainder entries, got shape {m.shape}")
    if order < 2:
        raise InputError("identity check needs order >= 2")
    trunc = 4 * order
    padded = np.zeros(trunc)
    padded[:order] = m

    n_grid = _identity_grid(order)
    f = fourier_synthesize(TrigSeries(0.0, -m, np.zeros(order)), n_grid)
    x = f.x
    g = GridFunction(n_grid, (0.5 - x) * f.samples)
    top = order // 2
    rhs = fourier_analyze(g, top).sin_coeffs

    ms = np.arange(1, trunc + 1)
    lhs = np.empty(top)
    for n in range(1, top + 1):
        mask = ms != n
        kernel = 1.0 / (ms[mask] - n) - 1.0 / (ms[mask] + n)
        lhs[n - 1] = (kernel @ padded[mask] - padded[n - 1] / (2.0 * n)) / (2.0 * pi)
    return float(np.abs(lhs - rhs).max())
