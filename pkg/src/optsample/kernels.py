"""Positive-definite kernel families and kernel-matrix assembly.

Three families are supported, all with unit diagonal:

* ``gaussian``      K(x, y) = exp(-||x - y||^2)
* ``sinc``          K(x, y) = prod_j sin(pi (x_j - y_j)) / (pi (x_j - y_j))
* ``exponential``   K(x, y) = exp(-||x - y||)

All evaluation is routed through :mod:`optsample.pairwise`, which picks
the compiled core when available.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import pairwise

FAMILIES = ("gaussian", "sinc", "exponential")


@dataclass(frozen=True)
class Kernel:
    """A kernel family together with the ambient dimension."""

    family: str
    dim: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown kernel family {self.family!r}; expected one of {FAMILIES}")
        if not isinstance(self.dim, int) or self.dim < 1:
            raise ValueError(f"kernel dim must be a positive integer, got {self.dim!r}")


def as_points(x, dim: int) -> np.ndarray:
    """Coerce scalars / sequences / arrays to a C-contiguous (n, dim) float array."""
    arr = np.atleast_1d(np.asarray(x, dtype=np.float64))
    if arr.ndim == 1:
        # a single point, or a list of 1-d points
        arr = arr[:, None] if dim == 1 else arr[None, :]
    if arr.ndim != 2 or arr.shape[1] != dim:
        raise ValueError(f"points have dimension {arr.shape[-1]}, kernel expects {dim}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("points must be finite")
    return np.ascontiguousarray(arr)


def gram(kernel: Kernel, a, b=None) -> np.ndarray:
    """Kernel matrix [K(a_i, b_j)]; with b omitted, the square matrix over a.

    The square case is symmetric by construction (identical entry
    formula on both sides of the diagonal).
    """
    pa = as_points(a, kernel.dim)
    pb = pa if b is None else as_points(b, kernel.dim)
    if pa.shape[0] == 0 or pb.shape[0] == 0:
        raise ValueError("gram requires nonempty point lists")
    if kernel.family == "gaussian":
        return np.exp(-pairwise.sqdist(pa, pb))
    if kernel.family == "exponential":
        return np.exp(-np.sqrt(pairwise.sqdist(pa, pb)))
    return pairwise.sinc_gram(pa, pb)


def kernel_eval(kernel: Kernel, x, y) -> float:
    """K(x, y) for a single pair of points."""
    return float(gram(kernel, as_points(x, kernel.dim), as_points(y, kernel.dim))[0, 0])


def kernel_diag(kernel: Kernel, points) -> np.ndarray:
    """Vector of K(x, x) over the given points (all families have unit diagonal)."""
    pts = as_points(points, kernel.dim)
    return np.ones(pts.shape[0])
