"""Grid quadrature helpers: Simpson weights, fourth-order cumulative
integrals, and cubic interpolation at Gauss points of grid intervals.

All routines assume a uniform grid x_i = i*h on [0, 1] with samples at
the n+1 nodes, n even.
"""

from __future__ import annotations

import numpy as np

# Gauss-Legendre 2-point nodes on a unit interval, offsets from midpoint.
_GAUSS_OFFSET = np.sqrt(3.0) / 6.0


def simpson_weights(n: int) -> np.ndarray:
    """Composite Simpson weights on n subintervals of [0, 1]; they sum to 1."""
    if n < 2 or n % 2 != 0:
        raise ValueError(f"Simpson rule needs an even number of subintervals, got {n}")
    w = np.ones(n + 1)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return w / (3.0 * n)


def simpson_integral(samples: np.ndarray) -> float:
    """Integral over [0, 1] of samples on a uniform grid (len odd)."""
    return float(simpson_weights(len(samples) - 1) @ samples)


def cumulative_integral(samples: np.ndarray, h: float) -> np.ndarray:
    """Running integral F[i] = int_0^{x_i} f, fourth order.

    Each subinterval is integrated with the cubic through its 4-point
    neighborhood (one-sided stencils at the ends), so odd-indexed nodes
    are as accurate as even ones.
    """
    f = np.asarray(samples, dtype=float)
    n = len(f) - 1
    if n < 3:
        raise ValueError("cumulative integral needs at least 4 samples")
    inc = np.empty(n)
    inc[0] = (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]) / 24.0
    inc[1:-1] = (-f[:-3] + 13.0 * f[1:-2] + 13.0 * f[2:-1] - f[3:]) / 24.0
    inc[-1] = (f[-4] - 5.0 * f[-3] + 19.0 * f[-2] + 9.0 * f[-1]) / 24.0
    out = np.empty(n + 1)
    out[0] = 0.0
    np.cumsum(inc, out=out[1:])
    out[1:] *= h
    return out


def cumulative_integral_right(samples: np.ndarray, h: float) -> np.ndarray:
    """Tail integral G[i] = int_{x_i}^{x_n} f, fourth order."""
    rev = cumulative_integral(np.asarray(samples, dtype=float)[::-1], h)
    return rev[::-1]


def refine_samples(samples: np.ndarray, factor: int) -> np.ndarray:
    """Resample a grid function onto a ``factor`` times finer grid.

    Coarse nodes are copied bit-exactly; interior fine nodes come from
    the cubic through the parent 4-node stencil (clamped at the ends).
    """
    s = np.asarray(samples, dtype=float)
    n = len(s) - 1
    if n < 3:
        raise ValueError("need at least 4 samples for cubic interpolation")
    if factor < 1:
        raise ValueError("refinement factor must be >= 1")
    if factor == 1:
        return s.copy()
    k = np.arange(n * factor)
    parent = k // factor
    j0 = np.clip(parent - 1, 0, n - 3)
    t = (parent - j0) + (k % factor).astype(float) / factor
    p0, p1, p2, p3 = s[j0], s[j0 + 1], s[j0 + 2], s[j0 + 3]
    l0 = (t - 1.0) * (t - 2.0) * (t - 3.0) / -6.0
    l1 = t * (t - 2.0) * (t - 3.0) / 2.0
    l2 = t * (t - 1.0) * (t - 3.0) / -2.0
    l3 = t * (t - 1.0) * (t - 2.0) / 6.0
    out = np.empty(n * factor + 1)
    out[:-1] = p0 * l0 + p1 * l1 + p2 * l2 + p3 * l3
    out[::factor] = s
    return out


def gauss_point_values(samples: np.ndarray, r: int = 1) -> tuple[np.ndarray, np.ndarray]:
    """Values of a grid function at the two Gauss points of each fine interval.

    The grid of ``samples`` (n+1 nodes) is refined by an integer factor
    ``r``; the function is evaluated at both Gauss points of every fine
    interval by cubic interpolation on the parent 4-node stencil
    (clamped at the boundary).  Exact for cubics, hence for constants,
    so constant potentials incur no interpolation error at all.
    """
    s = np.asarray(samples, dtype=float)
    n = len(s) - 1
    if n < 3:
        raise ValueError("need at least 4 samples for cubic interpolation")
    if r < 1:
        raise ValueError("refinement factor must be >= 1")
    k = np.arange(n * r)
    parent = k // r
    j0 = np.clip(parent - 1, 0, n - 3)
    base = (parent - j0).astype(float)
    local = (k % r).astype(float) / r
    p0, p1, p2, p3 = s[j0], s[j0 + 1], s[j0 + 2], s[j0 + 3]
    out = []
    for offset in (0.5 - _GAUSS_OFFSET, 0.5 + _GAUSS_OFFSET):
        t = base + local + offset / r
        l0 = (t - 1.0) * (t - 2.0) * (t - 3.0) / -6.0
        l1 = t * (t - 2.0) * (t - 3.0) / 2.0
        l2 = t * (t - 1.0) * (t - 3.0) / -2.0
        l3 = t * (t - 1.0) * (t - 2.0) / 6.0
        out.append(p0 * l0 + p1 * l1 + p2 * l2 + p3 * l3)
    return out[0], out[1]
