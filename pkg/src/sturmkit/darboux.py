"""Single-datum spectral surgery: move one eigenvalue or one norming
constant while freezing every other spectral datum.

Both transforms subtract twice the second logarithmic derivative of an
auxiliary factor from the potential.  The derivatives are evaluated
analytically from first-derivative identities, never by differencing a
computed logarithm:

* eigenvalue shift by t: the factor is the Wronskian
  W = xi phi' - xi' phi of the target eigenfunction phi at lambda_n and
  an auxiliary solution xi at lambda_n + t with xi(0) = 1,
  xi(1) = 1/phi'(1, lambda_n).  Then W' = t xi phi and
  W'' = t (xi' phi + xi phi').

* norming shift by t: the factor is
  theta(x) = 1 + (e^t - 1) int_x^1 psi_n^2 with psi_n the normalized
  eigenfunction, so theta(1) = 1 and theta(0) = e^t; theta is monotone
  between those endpoints and hence strictly positive for every real t.
  Then theta' = -(e^t - 1) psi_n^2 and theta'' = -2 (e^t - 1) psi_n psi_n'.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Mapping

import numpy as np

from ._propagator import propagate_endpoint, propagate_trajectory
from ._quadrature import cumulative_integral_right, gauss_point_values, refine_samples
from .errors import CrossingError, InputError, PositivityError
from .forward import _alpha_refinement, find_eigenvalues
from .potential import GridFunction

_ZERO_SHIFT = 1e-14
# chained transforms run on a refined working grid: parked intermediate
# potentials carry deep wells whose representation error would otherwise
# dominate the placement accuracy
_CHAIN_REFINEMENT = 2


@dataclass(frozen=True)
class ShiftRequest:
    """A single-datum modification: move datum ``kind`` at index n by t."""

    n: int
    t: float
    kind: Literal["eigenvalue", "norming"]

    def __post_init__(self):
        if self.n < 1:
            raise InputError("shift index must be >= 1")
        if self.kind not in ("eigenvalue", "norming"):
            raise InputError(f"unknown shift kind {self.kind!r}")


def _fine_trajectories(v: GridFunction, lams, r, y0=0.0, dy0=1.0):
    f1, f2 = gauss_point_values(v.samples, r)
    return propagate_trajectory(f1, f2, np.asarray(lams, dtype=float), v.h / r, y0, dy0)


def shift_eigenvalue(
    v: GridFunction,
    n: int,
    t: float,
    expected_lambdas: np.ndarray | None = None,
) -> GridFunction:
    """Potential with lambda_n moved by t and all other data frozen.

    Requires lambda_{n-1} < lambda_n + t < lambda_{n+1} (fresh spectral
    check); raises CrossingError otherwise and PositivityError if the
    Wronskian fails to stay positive on the grid.  ``expected_lambdas``
    optionally hints the current spectrum to the eigenvalue search,
    which matters for strongly displaced intermediate potentials.
    """
    if n < 1:
        raise InputError("shift index must be >= 1")
    if abs(t) <= _ZERO_SHIFT:
        return v
    guesses = None
    if expected_lambdas is not None:
        guesses = np.asarray(expected_lambdas, dtype=float)
        if len(guesses) < n + 1:
            guesses = None
    lams = find_eigenvalues(v, n + 1, guesses=guesses)
    lam_n = float(lams[n - 1])
    target = lam_n + t
    lower = float(lams[n - 2]) if n >= 2 else -np.inf
    upper = float(lams[n])
    if not (lower < target < upper):
        raise CrossingError(
            f"lambda_{n} + t = {target:g} leaves the admissible window "
            f"({lower:g}, {upper:g})"
        )

    r = _alpha_refinement(v.n_grid, max(abs(lam_n), abs(target), 1.0))
    phi, dphi = _fine_trajectories(v, [lam_n], r)
    phi, dphi = phi[0], dphi[0]
    ya, dya = _fine_trajectories(v, [target], r, y0=1.0, dy0=0.0)
    yb, dyb = _fine_trajectories(v, [target], r, y0=0.0, dy0=1.0)
    ya, dya, yb, dyb = ya[0], dya[0], yb[0], dyb[0]
    if yb[-1] == 0.0:
        raise CrossingError(f"lambda_{n} + t = {target:g} coincides with an eigenvalue")
    c = (1.0 / dphi[-1] - ya[-1]) / yb[-1]
    xi = ya + c * yb
    dxi = dya + c * dyb

    wron = xi * dphi - dxi * phi
    wmin = float(wron.min())
    if wmin <= 0.0:
        at = int(np.argmin(wron))
        raise PositivityError(
            f"Wronskian reached {wmin:g} on the grid; shift hypothesis or "
            "resolution violated",
            min_value=wmin,
            at_x=at / (v.n_grid * r),
        )
    # second log-derivative from W' = t xi phi, W'' = t (xi' phi + xi phi')
    sl = slice(None, None, r)
    w0, wp, wpp = wron[sl], t * (xi * phi)[sl], t * (dxi * phi + xi * dphi)[sl]
    correction = 2.0 * (wpp / w0 - (wp / w0) ** 2)
    return GridFunction(v.n_grid, v.samples - correction)


def shift_norming(
    v: GridFunction,
    n: int,
    t: float,
    expected_lambdas: np.ndarray | None = None,
) -> GridFunction:
    """Potential with nu_n moved by t and the whole spectrum (and every
    other norming constant) frozen.

    The transform is defined for every real t; a non-positive theta on
    the grid therefore signals a numerical defect and raises.
    """
    if n < 1:
        raise InputError("shift index must be >= 1")
    if abs(t) <= _ZERO_SHIFT:
        return v
    guesses = None
    if expected_lambdas is not None:
        guesses = np.asarray(expected_lambdas, dtype=float)
        if len(guesses) < n:
            guesses = None
    lams = find_eigenvalues(v, n, guesses=guesses)
    lam_n = float(lams[-1])

    r = _alpha_refinement(v.n_grid, abs(lam_n))
    phi, dphi = _fine_trajectories(v, [lam_n], r)
    phi, dphi = phi[0], dphi[0]
    tail = cumulative_integral_right(phi**2, v.h / r)
    total = float(tail[0])  # = alpha_n in the same quadrature
    coef = float(np.expm1(t))
    theta = 1.0 + coef * tail / total
    tmin = float(theta.min())
    if tmin <= 0.0:
        at = int(np.argmin(theta))
        raise PositivityError(
            f"theta reached {tmin:g} on the grid; normalization or resolution defect",
            min_value=tmin,
            at_x=at / (v.n_grid * r),
        )
    sl = slice(None, None, r)
    th = theta[sl]
    thp = -coef * (phi[sl] ** 2) / total
    thpp = -2.0 * coef * (phi[sl] * dphi[sl]) / total
    correction = 2.0 * (thpp / th - (thp / th) ** 2)
    return GridFunction(v.n_grid, v.samples - correction)


def _tag_step(exc, step: str):
    exc.step = step
    exc.args = (f"{exc.args[0]} [at step: {step}]",) + exc.args[1:]
    return exc


def retarget_head(
    v: GridFunction,
    lambda_targets: Mapping[int, float] | None = None,
    nu_targets: Mapping[int, float] | None = None,
    warn_sink: list[str] | None = None,
) -> GridFunction:
    """Place finitely many leading eigenvalues and norming constants at
    requested final values, leaving all other data fixed.

    Eigenvalues move in two phases to avoid crossings: all head
    eigenvalues are first parked far left in ascending order at
    positions  base - (N + 1 - n) * Delta  with
    base = min(lambda_1, smallest target) and Delta = max(1, first gap),
    then placed at their targets in descending order.  Norming shifts
    follow; they commute with each other and leave the spectrum fixed.
    """
    lambda_targets = dict(lambda_targets or {})
    nu_targets = dict(nu_targets or {})
    if not lambda_targets and not nu_targets:
        return v
    if any(k < 1 for k in (*lambda_targets, *nu_targets)):
        raise InputError("target indices must be >= 1")
    head = max((*lambda_targets, *nu_targets))

    coarse_n = v.n_grid
    v = GridFunction(coarse_n * _CHAIN_REFINEMENT, refine_samples(v.samples, _CHAIN_REFINEMENT))
    lams = find_eigenvalues(v, head + 1)
    finals = np.array([lambda_targets.get(k, lams[k - 1]) for k in range(1, head + 1)])
    bound = np.append(finals, lams[head])
    if np.any(np.diff(bound) <= 0):
        k = int(np.argmax(np.diff(bound) <= 0)) + 1
        raise CrossingError(
            f"requested head values are not strictly increasing against the "
            f"unchanged tail (first violation between indices {k} and {k + 1})"
        )

    current = lams.copy()
    scale = 1.0 + np.abs(current[:head])
    moving = np.abs(finals - current[:head]) > 1e-10 * scale
    vcur = v
    if np.any(moving):
        delta = max(1.0, float(lams[1] - lams[0]))
        base = min(float(lams[0]), float(finals.min()))
        parks = base - (head + 1 - np.arange(1, head + 1)) * delta
        for k in range(1, head + 1):
            step = f"park lambda_{k} at {parks[k - 1]:g}"
            if warn_sink is not None:
                room = (current[k] - parks[k - 1]) / delta
                if room < 0.5:
                    warn_sink.append(
                        f"parking lambda_{k} within {room:.3g} * Delta of its upper neighbor"
                    )
            try:
                vcur = shift_eigenvalue(
                    vcur, k, float(parks[k - 1] - current[k - 1]), expected_lambdas=current
                )
            except (CrossingError, PositivityError) as exc:
                raise _tag_step(exc, step)
            current[k - 1] = parks[k - 1]
        for k in range(head, 0, -1):
            step = f"place lambda_{k} at {finals[k - 1]:g}"
            if warn_sink is not None:
                upper = current[k]
                lower = current[k - 2] if k >= 2 else finals[k - 1] - delta
                side = min(finals[k - 1] - lower, upper - finals[k - 1])
                if side < 1e-3 * (upper - lower):
                    warn_sink.append(
                        f"placement of lambda_{k} sits {side:.3g} from the window edge"
                    )
            try:
                vcur = shift_eigenvalue(
                    vcur, k, float(finals[k - 1] - current[k - 1]), expected_lambdas=current
                )
            except (CrossingError, PositivityError) as exc:
                raise _tag_step(exc, step)
            current[k - 1] = finals[k - 1]

    if nu_targets:
        idx = sorted(nu_targets)
        m = max(idx)
        v1, v2 = gauss_point_values(vcur.samples)
        _, dphi1 = propagate_endpoint(v1, v2, current[:m], vcur.h)
        signs = (-1.0) ** np.arange(1, m + 1)
        signed = signs * dphi1
        if np.any(signed <= 0.0):
            raise CrossingError("endpoint derivative has the wrong sign before norming shifts")
        nus = np.log(signed)
        for k in idx:
            step = f"shift nu_{k} to {nu_targets[k]:g}"
            t = float(nu_targets[k] - nus[k - 1])
            if abs(t) <= 1e-9:  # below the transform's own noise floor
                continue
            try:
                vcur = shift_norming(vcur, k, t, expected_lambdas=current)
            except (CrossingError, PositivityError) as exc:
                raise _tag_step(exc, step)
    return GridFunction(coarse_n, vcur.samples[::_CHAIN_REFINEMENT])
