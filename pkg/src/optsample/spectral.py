"""Nystrom discretization of the kernel integral operator on a measure.

The operator (Tf)(x) = integral of f(t) K(t, x) dmu(t) is represented on
the measure nodes: with M = W^{1/2} K[Y] W^{1/2} = sum_i lambda_i d_i d_i^T,
the functions e_i = sum_k C[i,k] K(y_k, .) with C[i,:] = (W^{1/2} d_i)^T /
sqrt(lambda_i) are orthonormal in the kernel space and satisfy
T e_i = lambda_i e_i for the discretized operator.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import RankDeficientError
from .kernels import Kernel, as_points, gram, kernel_diag
from .linalg import EIG_TRUNCATION, sym_eig
from .measures import Measure, integrate
from .rkhs import Expansion, eval_expansion, rkhs_inner


@dataclass(frozen=True, eq=False)
class EigenBasis:
    """Top eigenfunctions of the discretized operator, as kernel expansions.

    Row i of coeffs gives e_i = sum_k coeffs[i, k] K(y_k, .) over the
    measure nodes y_k; eigenvalues are sorted descending.
    """

    measure: Measure
    eigenvalues: np.ndarray
    coeffs: np.ndarray
    kernel: Kernel

    def __post_init__(self):
        vals = np.atleast_1d(np.asarray(self.eigenvalues, dtype=np.float64))
        coeffs = np.asarray(self.coeffs, dtype=np.float64)
        if coeffs.ndim != 2 or coeffs.shape != (vals.shape[0], self.measure.count):
            raise ValueError("coeffs must be (n_eigenfunctions, n_nodes)")
        if np.any(vals <= 0) or np.any(np.diff(vals) > 0):
            raise ValueError("eigenvalues must be positive and sorted descending")
        if np.any(np.all(coeffs == 0.0, axis=1)):
            raise ValueError("degenerate zero eigenfunction")
        object.__setattr__(self, "eigenvalues", vals)
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def size(self) -> int:
        return self.eigenvalues.shape[0]

    def expansions(self) -> list[Expansion]:
        return [
            Expansion(self.measure.nodes, self.coeffs[i], self.kernel)
            for i in range(self.size)
        ]


def kl_eigenbasis(kernel: Kernel, measure: Measure, n: int) -> EigenBasis:
    """Top-n orthonormal eigenfunctions of the discretized operator.

    Raises RankDeficientError when fewer than n eigenvalues sit above the
    relative truncation threshold; a near-tie across the n/(n+1) boundary
    is only warned about (the eigensolver order is deterministic).
    """
    if n < 1 or n > measure.count:
        raise ValueError(f"need 1 <= n <= {measure.count} eigenfunctions, got {n}")
    ky = gram(kernel, measure.nodes)
    sqrt_w = np.sqrt(measure.weights)
    m_mat = sqrt_w[:, None] * ky * sqrt_w[None, :]
    eig = sym_eig(m_mat)
    lmax = eig.values[0]
    if lmax <= 0 or eig.values[n - 1] <= EIG_TRUNCATION * lmax:
        raise RankDeficientError(
            f"operator has fewer than {n} eigenvalues above threshold"
        )
    if n < measure.count and (eig.values[n - 1] - eig.values[n]) < 1e-10 * lmax:
        warnings.warn(
            f"eigenvalue tie across the {n}/{n + 1} boundary; "
            "basis membership decided by eigensolver order",
            stacklevel=2,
        )
    lam = eig.values[:n].copy()
    d = eig.vectors[:, :n]
    coeffs = (sqrt_w[:, None] * d).T / np.sqrt(lam)[:, None]
    return EigenBasis(measure=measure, eigenvalues=lam, coeffs=coeffs, kernel=kernel)


def eval_eigenfunctions(basis: EigenBasis, queries) -> np.ndarray:
    """Matrix of eigenfunction values, entry (j, k) = e_k(x_j)."""
    q = as_points(queries, basis.kernel.dim)
    return gram(basis.kernel, q, basis.measure.nodes) @ basis.coeffs.T


def bK_matrix(kernel: Kernel, measure: Measure, X) -> np.ndarray:
    """Second-moment matrix of kernel sections over the measure.

    Entry (k, l) is the quadrature of K(x_k, t) K(t, x_l) dmu(t);
    symmetric positive semidefinite.
    """
    pts = X.points if hasattr(X, "points") else as_points(X, kernel.dim)
    kxy = gram(kernel, pts, measure.nodes)
    out = (kxy * measure.weights[None, :]) @ kxy.T
    return 0.5 * (out + out.T)


def k_omega(kernel: Kernel, measure: Measure) -> float:
    """Integral of the kernel diagonal; the measure mass for unit-diagonal kernels."""
    return integrate(measure, kernel_diag(kernel, measure.nodes))


def subspace_energy(kernel: Kernel, measure: Measure, span) -> float:
    """Mean-square distance of the kernel sections K(t, .) to a span.

    The span (a list of Expansions) is orthonormalized in the kernel
    space through its Gram matrix; the energy is K_Omega minus the sum of
    quadratures of the squared orthonormal functions, using that
    (Tu, u) equals the integral of u^2 dmu.
    """
    komega = k_omega(kernel, measure)
    funcs = list(span)
    if not funcs:
        return komega
    r = len(funcs)
    g = np.empty((r, r))
    for i in range(r):
        for j in range(i, r):
            g[i, j] = g[j, i] = rkhs_inner(funcs[i], funcs[j])
    eig = sym_eig(g)
    if eig.values[0] <= 0 or eig.values[-1] <= EIG_TRUNCATION * eig.values[0]:
        raise RankDeficientError("span functions are numerically dependent")
    fvals = np.stack([eval_expansion(f, measure.nodes) for f in funcs])
    uvals = (eig.vectors / np.sqrt(eig.values)).T @ fvals
    captured = float(np.sum(measure.weights[None, :] * uvals * uvals))
    return komega - captured
