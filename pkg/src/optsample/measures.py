"""Box domains, weighted node-set measures, and point-set containers.

A Measure is the discrete stand-in for the integration measure on the
reconstruction domain: either quadrature nodes for the Lebesgue measure
(midpoint rule on a box) or an explicitly given weighted node set.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def _freeze(arr: np.ndarray) -> np.ndarray:
    out = np.ascontiguousarray(np.asarray(arr, dtype=np.float64))
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class BoxDomain:
    """Axis-aligned box { x : lo[i] <= x[i] <= hi[i] }."""

    lo: np.ndarray
    hi: np.ndarray

    def __post_init__(self):
        lo = _freeze(np.atleast_1d(self.lo))
        hi = _freeze(np.atleast_1d(self.hi))
        if lo.ndim != 1 or lo.shape != hi.shape:
            raise ValueError("lo and hi must be vectors of equal length")
        if not np.all(lo < hi):
            raise ValueError("domain requires lo[i] < hi[i] on every axis")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def dim(self) -> int:
        return self.lo.shape[0]

    @property
    def diameter(self) -> float:
        return float(np.linalg.norm(self.hi - self.lo))

    @property
    def volume(self) -> float:
        return float(np.prod(self.hi - self.lo))

    def clamp(self, points: np.ndarray) -> np.ndarray:
        """Project points coordinate-wise into the box."""
        return np.clip(points, self.lo, self.hi)

    def contains(self, points: np.ndarray) -> bool:
        return bool(np.all(points >= self.lo) and np.all(points <= self.hi))


@dataclass(frozen=True)
class Measure:
    """Finite positive measure given by nodes and strictly positive weights."""

    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=np.float64)
        if nodes.ndim == 1:
            nodes = nodes[:, None]
        nodes = _freeze(nodes)
        weights = _freeze(np.atleast_1d(self.weights))
        if nodes.shape[0] != weights.shape[0]:
            raise ValueError("node and weight counts differ")
        if nodes.shape[0] == 0:
            raise ValueError("measure needs at least one node")
        if not np.all(weights > 0) or not np.all(np.isfinite(weights)):
            raise ValueError("weights must be strictly positive and finite")
        if _has_duplicate_rows(nodes):
            raise ValueError("measure nodes must be pairwise distinct")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    @property
    def count(self) -> int:
        return self.nodes.shape[0]

    @property
    def dim(self) -> int:
        return self.nodes.shape[1]

    @property
    def mass(self) -> float:
        return float(self.weights.sum())


@dataclass(frozen=True)
class PointSet:
    """An ordered list of candidate sampling points in R^d."""

    points: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.ndim != 2 or pts.shape[0] == 0:
            raise ValueError("point set must be a nonempty (n, d) array")
        if not np.all(np.isfinite(pts)):
            raise ValueError("points must be finite")
        object.__setattr__(self, "points", _freeze(pts))

    @property
    def count(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def validate(self, domain: BoxDomain, delta_sep: float) -> None:
        """Raise if any point leaves the domain or the separation is violated."""
        if not domain.contains(self.points):
            raise ValueError("point set leaves the domain")
        if separation_violation(self.points, delta_sep) > 0:
            raise ValueError(f"pairwise separation below {delta_sep}")


def _has_duplicate_rows(arr: np.ndarray) -> bool:
    if arr.shape[0] < 2:
        return False
    order = np.lexsort(arr.T[::-1])
    srt = arr[order]
    return bool(np.any(np.all(srt[1:] == srt[:-1], axis=1)))


def min_separation(points: np.ndarray) -> float:
    """Smallest pairwise euclidean distance; inf for a single point."""
    n = points.shape[0]
    if n < 2:
        return np.inf
    diff = points[:, None, :] - points[None, :, :]
    d2 = np.einsum("ijk,ijk->ij", diff, diff)
    iu = np.triu_indices(n, k=1)
    return float(np.sqrt(d2[iu].min()))


def separation_violation(points: np.ndarray, delta_sep: float) -> float:
    """Total deficit of pairwise distances below delta_sep (0 when valid)."""
    n = points.shape[0]
    if n < 2 or delta_sep <= 0:
        return 0.0
    diff = points[:, None, :] - points[None, :, :]
    d = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
    iu = np.triu_indices(n, k=1)
    deficit = np.maximum(0.0, delta_sep - d[iu])
    return float(deficit.sum())


def default_delta_sep(domain: BoxDomain) -> float:
    """Minimum pairwise separation: 1e-6 of the domain diameter."""
    return 1e-6 * domain.diameter


def canonical_order(points: np.ndarray) -> np.ndarray:
    """Rows sorted lexicographically (first coordinate primary)."""
    return points[np.lexsort(points.T[::-1])]


def tensor_grid_points(domain: BoxDomain, per_axis: int) -> np.ndarray:
    """Endpoint-inclusive tensor grid with per_axis points on every axis."""
    if per_axis < 1:
        raise ValueError("need at least one point per axis")
    axes = []
    for i in range(domain.dim):
        if per_axis == 1:
            axes.append(np.array([0.5 * (domain.lo[i] + domain.hi[i])]))
        else:
            axes.append(np.linspace(domain.lo[i], domain.hi[i], per_axis))
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=1)


def grid_measure(domain: BoxDomain, resolution) -> Measure:
    """Midpoint-rule quadrature of the Lebesgue measure on a box.

    Each axis i is split into resolution[i] equal cells with a node at
    every cell center; the weight of a node is the cell volume, so the
    total mass equals the box volume.
    """
    res = np.atleast_1d(np.asarray(resolution, dtype=int))
    if res.shape[0] == 1 and domain.dim > 1:
        res = np.repeat(res, domain.dim)
    if res.shape[0] != domain.dim:
        raise ValueError("resolution must give one entry per axis")
    if np.any(res < 2):
        raise ValueError("resolution must be >= 2 per axis")
    axes = []
    widths = (domain.hi - domain.lo) / res
    for i in range(domain.dim):
        axes.append(domain.lo[i] + widths[i] * (np.arange(res[i]) + 0.5))
    mesh = np.meshgrid(*axes, indexing="ij")
    nodes = np.stack([m.ravel() for m in mesh], axis=1)
    weights = np.full(nodes.shape[0], float(np.prod(widths)))
    return Measure(nodes, weights)


def discrete_uniform_measure(points) -> Measure:
    """Uniform probability measure on pairwise-distinct points (weights 1/m)."""
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim == 1:
        pts = pts[:, None]
    if pts.shape[0] == 0:
        raise ValueError("need at least one point")
    if _has_duplicate_rows(pts):
        raise ValueError("points must be pairwise distinct")
    m = pts.shape[0]
    return Measure(pts, np.full(m, 1.0 / m))


def integrate(measure: Measure, values) -> float:
    """Sum of weights[k] * values[k] over the nodes."""
    vals = np.asarray(values, dtype=np.float64)
    if vals.shape != (measure.count,):
        raise ValueError(f"values must have length {measure.count}, got shape {vals.shape}")
    return float(measure.weights @ vals)
