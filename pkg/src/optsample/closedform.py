"""Closed-form optimal configurations for special cases; optimizer oracles.

For the exponential kernel on an interval with two sampling points the
sup-min problem has an explicit solution; for any radial kernel with a
single point the optimum is the Chebyshev center of the domain. A grid
sweep validates the two-point formula exhaustively.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .measures import BoxDomain


@dataclass(frozen=True)
class TwoPointSolution:
    """Optimal pair for the exponential kernel on [a, b] with the achieved
    sup-min value of V; symmetric about the interval midpoint."""

    x1: float
    x2: float
    value: float


def exp_two_point_optimal(a: float, b: float) -> TwoPointSolution:
    """Exact two-point optimum for the exponential kernel on [a, b].

    With L = b - a and g = (-e^{-L} + sqrt(e^{-2L} + 8 e^{-L})) / 2 the
    points are x1 = a - ln(g)/2 and x2 = b + ln(g)/2 (g < 1, so both lie
    strictly inside); g itself is the achieved sup-min of V.
    """
    if not a < b:
        raise ValueError("need a < b")
    L = b - a
    g = 0.5 * (-np.exp(-L) + np.sqrt(np.exp(-2.0 * L) + 8.0 * np.exp(-L)))
    shift = 0.5 * np.log(g)
    return TwoPointSolution(x1=float(a - shift), x2=float(b + shift), value=float(g))


def v_function(x, x1: float, x2: float):
    """V(x, x1, x2) for the exponential kernel; vectorized over x.

    Equals k_x^T K[{x1,x2}]^{-1} k_x, so 1 - V is the squared power
    function of the pair.
    """
    if x1 == x2:
        raise ValueError("x1 and x2 must differ")
    x = np.asarray(x, dtype=np.float64)
    r1 = np.abs(x1 - x)
    r2 = np.abs(x2 - x)
    r12 = abs(x1 - x2)
    num = np.exp(-2.0 * r1) + np.exp(-2.0 * r2) - 2.0 * np.exp(-(r1 + r2 + r12))
    den = 1.0 - np.exp(-2.0 * r12)
    out = num / den
    return float(out) if out.ndim == 0 else out


def min_v_on_interval(a: float, b: float, x1: float, x2: float, grid: int) -> float:
    """min over a uniform x-grid on [a, b] of V(x, x1, x2); test helper."""
    xs = np.linspace(a, b, grid)
    return float(v_function(xs, x1, x2).min())


def supmin_v_bruteforce(a: float, b: float, grid: int) -> TwoPointSolution:
    """Grid search for max over pairs of min over x of V.

    Pairs (x1, x2) sweep an extended grid on [a - L, b + L] (candidates
    outside the interval included on purpose); x sweeps [a, b]. Ties keep
    the first maximum, so the result is deterministic.
    """
    if not a < b:
        raise ValueError("need a < b")
    if grid < 50:
        raise ValueError("grid must be >= 50")
    L = b - a
    pair_grid = np.linspace(a - L, b + L, grid)
    xs = np.linspace(a, b, grid)

    # e^{-|g - x|} for every grid candidate against every x, built once
    decay = np.exp(-np.abs(pair_grid[:, None] - xs[None, :]))
    decay2 = decay * decay

    best_val = -np.inf
    best_pair = (pair_grid[0], pair_grid[1])
    for i in range(grid - 1):
        q = np.exp(-(pair_grid[i + 1 :] - pair_grid[i]))
        num = decay2[i][None, :] + decay2[i + 1 :] - 2.0 * (decay[i][None, :] * decay[i + 1 :]) * q[:, None]
        v = num / (1.0 - q * q)[:, None]
        mins = v.min(axis=1)
        j = int(np.argmax(mins))
        if mins[j] > best_val:
            best_val = float(mins[j])
            best_pair = (float(pair_grid[i]), float(pair_grid[i + 1 + j]))
    return TwoPointSolution(x1=best_pair[0], x2=best_pair[1], value=best_val)


def radial_one_point_optimal(domain: BoxDomain) -> np.ndarray:
    """Chebyshev center of a box: the per-axis midpoint.

    The single-point optimum for any radial kernel under the sup norm.
    """
    return 0.5 * (domain.lo + domain.hi)
