"""Kernel-space primitives: power function, minimal-norm interpolation,
inner products of kernel expansions, and subspace distances.

The power function phi_X(x) is the distance from the kernel section
K(x, .) to span{K(x_j, .)}; it bounds the pointwise reconstruction error
of the minimal-norm interpolant over the unit ball of the space.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import RankDeficientError
from .kernels import Kernel, as_points, gram, kernel_diag
from .linalg import EIG_TRUNCATION, chol_factor, chol_solve, inv_sqrt, max_gen_eig, sym_eig, symmetrize
from .measures import Measure, PointSet, integrate


@dataclass(frozen=True, eq=False)
class Expansion:
    """Finite kernel expansion f = sum_j c_j K(z_j, .)."""

    centers: np.ndarray
    coefficients: np.ndarray
    kernel: Kernel

    def __post_init__(self):
        centers = as_points(self.centers, self.kernel.dim)
        coeffs = np.atleast_1d(np.asarray(self.coefficients, dtype=np.float64))
        if coeffs.ndim != 1 or coeffs.shape[0] != centers.shape[0]:
            raise ValueError("one coefficient per center required")
        object.__setattr__(self, "centers", centers)
        object.__setattr__(self, "coefficients", coeffs)


@dataclass(frozen=True, eq=False)
class Interpolant:
    """Kernel expansion over sampling points solving K[X] alpha = f(X)."""

    points: PointSet
    coefficients: np.ndarray
    kernel: Kernel

    @property
    def centers(self) -> np.ndarray:
        return self.points.points


def eval_expansion(f, queries) -> np.ndarray:
    """Pointwise values of an Expansion or Interpolant at query points."""
    q = as_points(queries, f.kernel.dim)
    return gram(f.kernel, q, f.centers) @ f.coefficients


def rkhs_inner(f: Expansion, g) -> float:
    """Native-space inner product c^T K[Z, W] d of two kernel expansions."""
    if f.kernel != g.kernel:
        raise ValueError("expansions live in different kernel spaces")
    cross = gram(f.kernel, f.centers, g.centers)
    return float(f.coefficients @ cross @ g.coefficients)


def rkhs_norm(f) -> float:
    return float(np.sqrt(max(rkhs_inner(f, f), 0.0)))


def _query_points(kernel: Kernel, x) -> tuple[np.ndarray, bool]:
    arr = np.asarray(x, dtype=np.float64)
    scalar = arr.ndim == 0 or (arr.ndim == 1 and kernel.dim > 1)
    return as_points(x, kernel.dim), scalar


def _points_of(X) -> np.ndarray:
    return X.points if isinstance(X, PointSet) else np.asarray(X, dtype=np.float64)


def power_function(kernel: Kernel, X, x):
    """phi_X at one point or a batch of points.

    Computed through the Schur form phi^2 = K(x,x) - k_x^T K[X]^{-1} k_x
    with one Cholesky factorization shared by the whole batch; negative
    round-off under the square root clamps to zero.
    """
    pts = _points_of(X)
    queries, scalar = _query_points(kernel, x)
    factor = chol_factor(gram(kernel, pts))
    kx = gram(kernel, pts, queries)
    v = factor.half_solve(kx)
    phi2 = kernel_diag(kernel, queries) - np.einsum("ij,ij->j", v, v)
    phi = np.sqrt(np.maximum(phi2, 0.0))
    return float(phi[0]) if scalar else phi


def power_function_basis_form(kernel: Kernel, X, x):
    """phi_X through the orthonormal-basis form; cross-check path.

    Builds the orthonormal basis u_j = sum_k alpha_jk K(x_k, .) with
    [alpha] = K[X]^{-1/2} and evaluates K(x,x) - sum_j u_j(x)^2.
    """
    pts = _points_of(X)
    queries, scalar = _query_points(kernel, x)
    alpha = inv_sqrt(gram(kernel, pts))
    u = alpha @ gram(kernel, pts, queries)
    phi2 = kernel_diag(kernel, queries) - np.einsum("ij,ij->j", u, u)
    phi = np.sqrt(np.maximum(phi2, 0.0))
    return float(phi[0]) if scalar else phi


def phi_norm(kernel: Kernel, X, measure: Measure, p) -> float:
    """L^p_mu norm of the power function over the measure nodes, p in {2, inf}."""
    phi = power_function(kernel, X, measure.nodes)
    if p == 2:
        return float(np.sqrt(max(integrate(measure, phi * phi), 0.0)))
    if p == np.inf or p == "inf":
        return float(phi.max())
    raise ValueError("p must be 2 or inf")


def min_norm_interpolant(kernel: Kernel, X, values) -> Interpolant:
    """Smallest-norm function in the space matching the given samples at X."""
    pts = _points_of(X)
    vals = np.atleast_1d(np.asarray(values, dtype=np.float64))
    if vals.shape[0] != pts.shape[0]:
        raise ValueError("one value per sampling point required")
    alpha = chol_solve(gram(kernel, pts), vals)
    pset = X if isinstance(X, PointSet) else PointSet(pts)
    return Interpolant(points=pset, coefficients=alpha, kernel=kernel)


def _basis_values_at(kernel: Kernel, basis, queries: np.ndarray) -> np.ndarray:
    """Matrix [e_k(x_j)] of basis eigenfunction values at query points."""
    return gram(kernel, queries, basis.measure.nodes) @ basis.coeffs.T


def subspace_distance(kernel: Kernel, X, basis) -> float:
    """Projector-norm distance between span{K(x_j, .)} and the eigen-span.

    Closed form sqrt(1 - 1/theta) with theta the largest generalized
    eigenvalue of (K[X], E E^T), E = [e_k(x_j)]. A numerically singular
    E E^T means some direction of the point span is orthogonal to the
    eigen-span, so the distance saturates at 1.
    """
    pts = _points_of(X)
    if basis.size != pts.shape[0]:
        raise ValueError("basis size must equal the number of sampling points")
    E = _basis_values_at(kernel, basis, pts)
    theta = max_gen_eig(gram(kernel, pts), E @ E.T)
    if not np.isfinite(theta):
        return 1.0
    return float(np.sqrt(max(0.0, 1.0 - 1.0 / theta)))


def subspace_distance_direct(kernel: Kernel, X, basis) -> float:
    """Distance by explicit projectors in an orthonormal joint basis; oracle.

    The joint span of {K(x_j, .)} and the eigenfunctions is orthonormalized
    through its Gram matrix (inner products are exact: cross terms are
    eigenfunction point values by the reproducing property), both
    projectors are formed in that basis, and the spectral norm of their
    difference is returned.
    """
    pts = _points_of(X)
    if basis.size != pts.shape[0]:
        raise ValueError("basis size must equal the number of sampling points")
    n = pts.shape[0]
    E = _basis_values_at(kernel, basis, pts)
    ky = gram(kernel, basis.measure.nodes)
    basis_gram = basis.coeffs @ ky @ basis.coeffs.T
    G = np.block([[gram(kernel, pts), E], [E.T, basis_gram]])
    eig = sym_eig(G)
    keep = eig.values > EIG_TRUNCATION * max(eig.values[0], 0.0)
    if not np.any(keep):
        raise RankDeficientError("joint span is numerically trivial")
    # coordinates of the original spanning functions in the orthonormal basis
    coords = eig.vectors[:, keep] * np.sqrt(eig.values[keep])

    def projector(rows: np.ndarray) -> np.ndarray:
        u, s, _ = np.linalg.svd(rows.T, full_matrices=False)
        cols = s > EIG_TRUNCATION**0.5 * max(s[0], 0.0) if s.size else s > 0
        q = u[:, cols]
        return q @ q.T

    p_x = projector(coords[:n])
    p_t = projector(coords[n:])
    return float(np.abs(np.linalg.eigvalsh(symmetrize(p_x - p_t))).max())


def energy_gap_bound(kernel: Kernel, measure: Measure, X, basis) -> float:
    """Upper bound 2 K_Omega dist(S_X, S_T) on the energy gap of the two spans."""
    k_omega = integrate(measure, kernel_diag(kernel, measure.nodes))
    return 2.0 * k_omega * subspace_distance(kernel, X, basis)
