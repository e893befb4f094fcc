"""Potentials on [0, 1]: grid representation, trigonometric analysis and
synthesis, Lebesgue norms, and parity decomposition.

Conventions
-----------
A grid function samples a real function at the n+1 nodes x_i = i/n of a
uniform grid, n even.  Trigonometric data is stored raw:

    a0  = int_0^1 v(t) dt
    a_n = int_0^1 v(t) cos(2 pi n t) dt
    b_n = int_0^1 v(t) sin(2 pi n t) dt

and synthesis evaluates  a0 + 2 sum a_n cos(2 pi n x) + 2 sum b_n sin(2 pi n x),
so ``fourier_synthesize(fourier_analyze(v, N))`` reproduces any band-limited
v exactly up to quadrature accuracy.  The sign convention that negates
cosine coefficients in the spectral linearization lives entirely in the
reconstruction module, never here.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._quadrature import simpson_weights
from .errors import InputError

MIN_GRID = 16


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Real function on [0, 1] sampled at the nodes of a uniform grid."""

    n_grid: int
    samples: np.ndarray = field(repr=False)

    def __post_init__(self):
        n = self.n_grid
        if n < MIN_GRID or n % 2 != 0:
            raise InputError(f"n_grid must be even and >= {MIN_GRID}, got {n}")
        s = np.array(self.samples, dtype=float)
        if s.shape != (n + 1,):
            raise InputError(f"expected {n + 1} samples for n_grid={n}, got shape {s.shape}")
        if not np.all(np.isfinite(s)):
            raise InputError("samples must all be finite")
        s.setflags(write=False)
        object.__setattr__(self, "samples", s)

    @classmethod
    def from_callable(cls, fn, n_grid: int) -> "GridFunction":
        x = np.arange(n_grid + 1) / n_grid
        return cls(n_grid, np.asarray(fn(x), dtype=float) + np.zeros(n_grid + 1))

    @classmethod
    def zero(cls, n_grid: int) -> "GridFunction":
        return cls(n_grid, np.zeros(n_grid + 1))

    @property
    def x(self) -> np.ndarray:
        return np.arange(self.n_grid + 1) / self.n_grid

    @property
    def h(self) -> float:
        return 1.0 / self.n_grid

    def __add__(self, c: float) -> "GridFunction":
        return GridFunction(self.n_grid, self.samples + float(c))

    __radd__ = __add__

    def __sub__(self, other: "GridFunction") -> "GridFunction":
        if not isinstance(other, GridFunction):
            return NotImplemented
        if other.n_grid != self.n_grid:
            raise InputError("grid mismatch in difference")
        return GridFunction(self.n_grid, self.samples - other.samples)


@dataclass(frozen=True, eq=False)
class TrigSeries:
    """Truncated trigonometric data (mean, cosine, sine coefficients)."""

    a0: float
    cos_coeffs: np.ndarray = field(repr=False)
    sin_coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        a = np.array(self.cos_coeffs, dtype=float)
        b = np.array(self.sin_coeffs, dtype=float)
        if a.ndim != 1 or b.ndim != 1 or len(a) != len(b):
            raise InputError("cos and sin coefficient arrays must be 1-D, same length")
        if not (np.isfinite(self.a0) and np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
            raise InputError("coefficients must all be finite")
        a.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "a0", float(self.a0))
        object.__setattr__(self, "cos_coeffs", a)
        object.__setattr__(self, "sin_coeffs", b)

    @property
    def order(self) -> int:
        """Truncation order N (number of cosine/sine coefficients)."""
        return len(self.cos_coeffs)


def fourier_analyze(v: GridFunction, order: int) -> TrigSeries:
    """Trigonometric coefficients of v up to the given order, by Simpson
    quadrature on the grid.

    Requires ``order <= n_grid / 4`` so every analyzed mode is resolved
    well clear of the grid Nyquist frequency.
    """
    if order < 0:
        raise InputError("order must be non-negative")
    max_order = v.n_grid // 4
    if order > max_order:
        raise InputError(
            f"order {order} exceeds the resolution of n_grid={v.n_grid}; "
            f"maximum admissible order is {max_order}"
        )
    w = simpson_weights(v.n_grid) * v.samples
    a0 = float(np.sum(w))
    if order == 0:
        return TrigSeries(a0, np.zeros(0), np.zeros(0))
    phase = 2.0 * np.pi * np.outer(v.x, np.arange(1, order + 1))
    return TrigSeries(a0, w @ np.cos(phase), w @ np.sin(phase))


def fourier_synthesize(series: TrigSeries, n_grid: int) -> GridFunction:
    """Sample a0 + 2 sum a_n cos(2 pi n x) + 2 sum b_n sin(2 pi n x) on a grid.

    Requires ``n_grid >= 4 * order``.
    """
    order = series.order
    if n_grid < 4 * order:
        raise InputError(f"n_grid={n_grid} too coarse for order {order}; need n_grid >= {4 * order}")
    x = np.arange(n_grid + 1) / n_grid
    values = np.full(n_grid + 1, series.a0)
    if order > 0:
        phase = 2.0 * np.pi * np.outer(x, np.arange(1, order + 1))
        values = values + 2.0 * (np.cos(phase) @ series.cos_coeffs)
        values = values + 2.0 * (np.sin(phase) @ series.sin_coeffs)
    return GridFunction(n_grid, values)


def lp_norm(v: GridFunction, p: float) -> float:
    """(int_0^1 |v|^p)^(1/p) by Simpson quadrature; requires p >= 1.

    The Simpson weights are positive and sum to one, so the discrete
    value is monotone in p exactly, as the continuum norm is.
    """
    if not p >= 1.0:
        raise InputError(f"p must be >= 1, got {p}")
    w = simpson_weights(v.n_grid)
    return float((w @ np.abs(v.samples) ** p) ** (1.0 / p))


def parity_split(v: GridFunction) -> tuple[GridFunction, GridFunction]:
    """Even/odd decomposition about x = 1/2; the parts sum back to v exactly."""
    rev = v.samples[::-1]
    even = 0.5 * (v.samples + rev)
    odd = 0.5 * (v.samples - rev)
    return GridFunction(v.n_grid, even), GridFunction(v.n_grid, odd)
