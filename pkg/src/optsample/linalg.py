"""Dense symmetric linear algebra used by the numerical modules.

Thin contracts over LAPACK (via numpy/scipy): symmetric eigendecomposition
with deterministic sign convention, Cholesky with an escalating jitter
ladder, inverse square root, and the largest generalized eigenvalue by
whitening. Matrices here are small (at most a few hundred rows).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import SingularMatrixError

# relative eigenvalue cutoff for every pseudo-inverse-like operation
EIG_TRUNCATION = 1e-12

JITTER_START = 1e-12
JITTER_MAX = 1e-6
JITTER_FACTOR = 10.0


def symmetrize(a: np.ndarray) -> np.ndarray:
    """(A + A^T)/2; quadrature and round-off break exact symmetry."""
    return 0.5 * (a + a.T)


@dataclass(frozen=True)
class SymEig:
    """Eigenvalues sorted descending with matching orthonormal columns."""

    values: np.ndarray
    vectors: np.ndarray


def sym_eig(a: np.ndarray) -> SymEig:
    """Full spectrum of a symmetric matrix, descending.

    The input is symmetrized first. Each eigenvector's sign is fixed by
    making its first nonzero component positive, so decompositions are
    reproducible across runs and platforms.
    """
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("sym_eig requires a square matrix")
    vals, vecs = np.linalg.eigh(symmetrize(a))
    vals = vals[::-1].copy()
    vecs = vecs[:, ::-1].copy()
    # deterministic sign: first component of significant magnitude positive
    for j in range(vecs.shape[1]):
        col = vecs[:, j]
        nz = np.nonzero(np.abs(col) > 1e-12 * np.abs(col).max())[0]
        if nz.size and col[nz[0]] < 0:
            vecs[:, j] = -col
    return SymEig(values=vals, vectors=vecs)


@dataclass(frozen=True)
class CholFactor:
    """Lower Cholesky factor of A + jitter*I with the jitter that was needed."""

    lower: np.ndarray
    jitter: float

    def solve(self, b: np.ndarray) -> np.ndarray:
        y = scipy.linalg.solve_triangular(self.lower, b, lower=True)
        return scipy.linalg.solve_triangular(self.lower.T, y, lower=False)

    def half_solve(self, b: np.ndarray) -> np.ndarray:
        """L^{-1} b, for quadratic forms b^T A^{-1} b = ||L^{-1} b||^2."""
        return scipy.linalg.solve_triangular(self.lower, b, lower=True)


def chol_factor(a: np.ndarray) -> CholFactor:
    """Cholesky with escalating jitter.

    Starts at 1e-12 * tr(A)/n and escalates tenfold up to 1e-6 * tr(A)/n;
    raises SingularMatrixError if the ladder is exhausted.
    """
    a = symmetrize(np.asarray(a, dtype=np.float64))
    n = a.shape[0]
    try:
        return CholFactor(np.linalg.cholesky(a), 0.0)
    except np.linalg.LinAlgError:
        pass
    base = np.trace(a) / n
    if not np.isfinite(base) or base <= 0:
        base = 1.0
    tau = JITTER_START * base
    tau_max = JITTER_MAX * base
    eye = np.eye(n)
    while tau <= tau_max * (1 + 1e-15):
        try:
            return CholFactor(np.linalg.cholesky(a + tau * eye), tau)
        except np.linalg.LinAlgError:
            tau *= JITTER_FACTOR
    raise SingularMatrixError(
        f"Cholesky failed for {n}x{n} matrix even with jitter {tau_max:g}"
    )


def chol_solve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve A X = B for symmetric positive definite A (jitter policy applies)."""
    b = np.asarray(b, dtype=np.float64)
    return chol_factor(a).solve(b)


def inv_sqrt(a: np.ndarray) -> np.ndarray:
    """Symmetric S with S A S = I.

    Requires all eigenvalues above the relative truncation threshold.
    """
    eig = sym_eig(a)
    lmax = eig.values[0]
    if lmax <= 0 or eig.values[-1] <= EIG_TRUNCATION * lmax:
        raise SingularMatrixError(
            "inverse square root needs eigenvalues above the truncation threshold"
        )
    scaled = eig.vectors / np.sqrt(eig.values)
    return scaled @ eig.vectors.T


def max_gen_eig(a: np.ndarray, b: np.ndarray) -> float:
    """Largest theta with A v = theta B v, for symmetric A and SPD B.

    Computed by whitening: the largest eigenvalue of L^{-1} A L^{-T}
    where B = L L^T. When B is numerically singular (smallest eigenvalue
    at or below the relative truncation threshold) the pencil has no
    finite largest eigenvalue in the direction of B's kernel; +inf is
    returned as the sentinel for that case.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape or a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("max_gen_eig requires square matrices of equal size")
    try:
        factor = CholFactor(np.linalg.cholesky(symmetrize(b)), 0.0)
    except np.linalg.LinAlgError:
        evals = np.linalg.eigvalsh(symmetrize(b))
        if evals[-1] <= 0 or evals[0] <= EIG_TRUNCATION * evals[-1]:
            return np.inf
        try:
            factor = chol_factor(b)
        except SingularMatrixError:
            return np.inf
    white = factor.half_solve(symmetrize(a))
    white = factor.half_solve(white.T)
    return float(np.linalg.eigvalsh(symmetrize(white))[-1])
