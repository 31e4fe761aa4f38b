"""Derivative-free search over point configurations.

Three strategies share the SearchResult contract: multistart Nelder-Mead
on the flattened coordinate vector (the workhorse), greedy exchange over
a finite candidate set, and exhaustive enumeration of candidate subsets
(the oracle for small instances). All are deterministic for a fixed seed
and independent of thread count: every restart owns a random stream
split from the master seed by its index, and the reduction breaks ties
on the lowest start index.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from ._parallel import parallel_map
from .errors import SearchFailedError
from .measures import PointSet, canonical_order, tensor_grid_points
from .objectives import ObjectiveSpec, is_penalty

REFLECT = 1.0
EXPAND = 2.0
CONTRACT = 0.5
SHRINK = 0.5


@dataclass(frozen=True)
class SearchConfig:
    """Multistart settings; max_iters and simplex_scale default per problem
    (2000 * n * d iterations, 0.1 * domain diameter)."""

    restarts: int = 20
    max_iters: int | None = None
    tol: float = 1e-10
    seed: int = 0
    simplex_scale: float | None = None

    def __post_init__(self):
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.max_iters is not None and self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.simplex_scale is not None and self.simplex_scale <= 0:
            raise ValueError("simplex_scale must be positive")


@dataclass(frozen=True, eq=False)
class SearchResult:
    """Best configuration found, in canonical (lexicographic) point order."""

    points: PointSet
    objective_value: float
    starts_tried: int
    best_start_index: int
    converged: bool
    improvement_trace: tuple = ()


def nelder_mead(f, x0: np.ndarray, scale: float, max_iters: int, tol: float):
    """Simplex descent with the classic coefficient set.

    The initial simplex perturbs each coordinate of x0 by `scale`.
    Stops when the simplex objective spread drops below tol*(1+|f_best|)
    or the iteration budget runs out. Returns (x, fx, converged).
    """
    dim = x0.shape[0]
    verts = np.tile(x0, (dim + 1, 1))
    for i in range(dim):
        verts[i + 1, i] += scale
    fvals = np.array([f(v) for v in verts])

    converged = False
    for _ in range(max_iters):
        order = np.argsort(fvals, kind="stable")
        verts = verts[order]
        fvals = fvals[order]
        if fvals[-1] - fvals[0] < tol * (1.0 + abs(fvals[0])):
            converged = True
            break

        centroid = verts[:-1].mean(axis=0)
        reflected = centroid + REFLECT * (centroid - verts[-1])
        f_r = f(reflected)
        if f_r < fvals[0]:
            expanded = centroid + EXPAND * (centroid - verts[-1])
            f_e = f(expanded)
            if f_e < f_r:
                verts[-1], fvals[-1] = expanded, f_e
            else:
                verts[-1], fvals[-1] = reflected, f_r
            continue
        if f_r < fvals[-2]:
            verts[-1], fvals[-1] = reflected, f_r
            continue
        contracted = centroid + CONTRACT * (centroid - verts[-1])
        f_c = f(contracted)
        if f_c < fvals[-1]:
            verts[-1], fvals[-1] = contracted, f_c
            continue
        # shrink toward the best vertex
        for i in range(1, dim + 1):
            verts[i] = verts[0] + SHRINK * (verts[i] - verts[0])
            fvals[i] = f(verts[i])

    best = int(np.argmin(fvals))
    return verts[best], float(fvals[best]), converged


def starting_configuration(spec: ObjectiveSpec) -> np.ndarray:
    """Deterministic start 0: the equally spaced layout.

    In d >= 2 with n not a perfect d-th power, the first n points of the
    ceil(n^(1/d))-per-axis tensor grid stand in (lexicographic order).
    """
    n, d = spec.n, spec.domain.dim
    if d == 1:
        return tensor_grid_points(spec.domain, n)
    k = math.ceil(round(n ** (1.0 / d), 9))
    grid = tensor_grid_points(spec.domain, k)
    return canonical_order(grid)[:n]


def _start_points(spec: ObjectiveSpec, config: SearchConfig, index: int) -> np.ndarray:
    if index == 0:
        return starting_configuration(spec)
    rng = np.random.default_rng(
        np.random.SeedSequence(entropy=config.seed, spawn_key=(index,))
    )
    return rng.uniform(spec.domain.lo, spec.domain.hi, size=(spec.n, spec.domain.dim))


def optimize_points(spec: ObjectiveSpec, config: SearchConfig | None = None) -> SearchResult:
    """Multistart Nelder-Mead over the flattened configuration vector.

    Start 0 is the equally spaced layout (so the result is never worse
    than that baseline); the remaining starts draw uniform configurations
    from per-start deterministic streams. Coordinates are clamped into
    the domain at every evaluation.
    """
    config = config or SearchConfig()
    n, d = spec.n, spec.domain.dim
    max_iters = config.max_iters if config.max_iters is not None else 2000 * n * d
    scale = (
        config.simplex_scale
        if config.simplex_scale is not None
        else 0.1 * spec.domain.diameter
    )

    def run_start(index: int):
        x0 = _start_points(spec, config, index).ravel()
        return nelder_mead(spec.evaluate, x0, scale, max_iters, config.tol)

    outcomes = parallel_map(run_start, range(config.restarts))
    best_index = 0
    for i in range(1, config.restarts):
        if outcomes[i][1] < outcomes[best_index][1]:
            best_index = i
    x_best, f_best, converged = outcomes[best_index]
    if is_penalty(f_best):
        raise SearchFailedError(
            "every start ended in the penalty region", best_value=f_best
        )
    points = canonical_order(spec.clamp_points(x_best))
    return SearchResult(
        points=PointSet(points),
        objective_value=spec.evaluate(points),
        starts_tried=config.restarts,
        best_start_index=best_index,
        converged=converged,
    )


def _nearest_unused(target: np.ndarray, candidates: np.ndarray, used: np.ndarray) -> int:
    d2 = np.einsum("ij,ij->i", candidates - target, candidates - target)
    d2 = np.where(used, np.inf, d2)
    return int(np.argmin(d2))


def greedy_exchange(
    spec: ObjectiveSpec, candidates, n: int, sweeps: int = 100
) -> SearchResult:
    """Exchange descent over a finite candidate set.

    Starts from the n candidates closest to the equally spaced layout,
    then repeatedly replaces each held point by the best strictly
    improving unused candidate (ties to the lowest candidate index)
    until a full sweep makes no swap.
    """
    cand = np.asarray(candidates, dtype=np.float64)
    if cand.ndim == 1:
        cand = cand[:, None]
    m = cand.shape[0]
    if n < 1 or n > m:
        raise ValueError(f"need 1 <= n <= {m} points")
    if sweeps < 1:
        raise ValueError("sweeps must be >= 1")

    used = np.zeros(m, dtype=bool)
    held = []
    for target in starting_configuration(spec):
        idx = _nearest_unused(target, cand, used)
        used[idx] = True
        held.append(idx)

    current = spec.evaluate(cand[held])
    trace = [current]
    converged = False
    for _ in range(sweeps):
        improved = False
        for pos in range(n):
            best_val = current
            best_cand = -1
            original = held[pos]
            for c in range(m):
                if used[c]:
                    continue
                held[pos] = c
                val = spec.evaluate(cand[held])
                if val < best_val:
                    best_val = val
                    best_cand = c
            held[pos] = original
            if best_cand >= 0:
                used[original] = False
                used[best_cand] = True
                held[pos] = best_cand
                current = best_val
                trace.append(current)
                improved = True
        if not improved:
            converged = True
            break

    if is_penalty(current):
        raise SearchFailedError("greedy exchange stuck in penalty region", best_value=current)
    points = canonical_order(cand[held])
    return SearchResult(
        points=PointSet(points),
        objective_value=spec.evaluate(points),
        starts_tried=1,
        best_start_index=0,
        converged=converged,
        improvement_trace=tuple(trace),
    )


def brute_force(spec: ObjectiveSpec, candidates, n: int) -> SearchResult:
    """Exact discrete optimum by enumerating every n-subset of candidates.

    Ties go to the lexicographically smallest index tuple (enumeration
    order). Refuses instances beyond 1e6 subsets.
    """
    cand = np.asarray(candidates, dtype=np.float64)
    if cand.ndim == 1:
        cand = cand[:, None]
    m = cand.shape[0]
    if n < 1 or n > m:
        raise ValueError(f"need 1 <= n <= {m} points")
    total = math.comb(m, n)
    if total > 10**6:
        raise ValueError(f"{total} subsets exceed the enumeration budget of 1e6")

    best_val = np.inf
    best_subset = None
    best_rank = -1
    for rank, subset in enumerate(itertools.combinations(range(m), n)):
        val = spec.evaluate(cand[list(subset)])
        if val < best_val:
            best_val = val
            best_subset = subset
            best_rank = rank
    if best_subset is None or is_penalty(best_val):
        raise SearchFailedError("all candidate subsets are degenerate", best_value=best_val)
    points = canonical_order(cand[list(best_subset)])
    return SearchResult(
        points=PointSet(points),
        objective_value=spec.evaluate(points),
        starts_tried=total,
        best_start_index=best_rank,
        converged=True,
    )
