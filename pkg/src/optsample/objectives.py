"""Point-configuration objectives and the uniform minimize-sign wrapper.

Three search objectives over a configuration X of n points:

* trace:     tr(bK K[X]^{-1})               larger is better
* subspace:  lambda_max(K[X], E E^T)        smaller is better (>= 1)
* supnorm:   max of phi_X over the measure  smaller is better

plus the spectral form of the trace objective used as a cross-check.
Every objective sorts X lexicographically before any arithmetic, so
permutation invariance is exact. Degenerate configurations (points
closer than the separation floor) yield a large finite penalty rather
than an exception so derivative-free search can step through them;
the penalty carries the sign that makes it worst in each objective's
own convention.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .kernels import Kernel, as_points, gram, kernel_diag
from .linalg import EIG_TRUNCATION, chol_factor, max_gen_eig
from .measures import (
    BoxDomain,
    Measure,
    canonical_order,
    default_delta_sep,
    separation_violation,
)
from .rkhs import phi_norm
from .spectral import EigenBasis, eval_eigenfunctions

OBJECTIVE_KINDS = ("trace", "trace_spectral", "subspace", "supnorm")

PENALTY_SCALE = 1e6


def penalty_value(violation: float) -> float:
    return PENALTY_SCALE * (1.0 + violation)


def is_penalty(value: float) -> bool:
    """True when a minimize-convention value lies in the penalty region."""
    return not np.isfinite(value) or value >= PENALTY_SCALE


def _prepare(kernel: Kernel, X, delta_sep: float):
    pts = X.points if hasattr(X, "points") else as_points(X, kernel.dim)
    violation = separation_violation(pts, delta_sep)
    if violation > 0:
        return None, violation
    return canonical_order(pts), 0.0


def trace_objective(kernel: Kernel, measure: Measure, X, delta_sep: float = 0.0) -> float:
    """tr(bK K[X]^{-1}); the energy captured by the point span (maximize).

    Evaluated in the Schur form: by trace cyclicity the value equals the
    quadrature of k_y^T K[X]^{-1} k_y over the nodes, each term a
    nonnegative quadratic form capped by K(y, y). The per-node cap keeps
    ill-conditioned configurations from inflating the value past the
    captured-energy bound (the complement of clamping phi^2 at zero),
    so the search cannot reward near-coincident points through solve
    noise.
    """
    pts, violation = _prepare(kernel, X, delta_sep)
    if pts is None:
        return -penalty_value(violation)
    factor = chol_factor(gram(kernel, pts))
    v = factor.half_solve(gram(kernel, pts, measure.nodes))
    captured = np.einsum("ij,ij->j", v, v)
    return float(measure.weights @ np.minimum(captured, kernel_diag(kernel, measure.nodes)))


def trace_objective_spectral(
    basis: EigenBasis, kernel: Kernel, X, delta_sep: float = 0.0
) -> float:
    """Trace objective through the eigenfunction values; equals
    trace_objective when the basis holds the full spectrum.

    Same Schur evaluation: sum over basis functions of
    lambda_i ||L^{-1} d_i||^2 with d_i the values of e_i at X.
    """
    pts, violation = _prepare(kernel, X, delta_sep)
    if pts is None:
        return -penalty_value(violation)
    factor = chol_factor(gram(kernel, pts))
    v = factor.half_solve(eval_eigenfunctions(basis, pts))
    return float(np.einsum("ij,ij,j->", v, v, basis.eigenvalues))


def subspace_objective(basis: EigenBasis, kernel: Kernel, X, delta_sep: float = 0.0) -> float:
    """Largest generalized eigenvalue of (K[X], E E^T); 1 at the optimum,
    +inf when the eigenfunction value matrix is numerically singular."""
    pts, violation = _prepare(kernel, X, delta_sep)
    if pts is None:
        return penalty_value(violation)
    if basis.size != pts.shape[0]:
        raise ValueError("subspace objective needs |X| == basis size")
    e = eval_eigenfunctions(basis, pts)
    b = e @ e.T
    # the kernel matrix has unit diagonal (trace exactly n); an eigenvalue
    # matrix negligible at that scale means the whole point span is
    # numerically orthogonal to the eigen-span and the pencil diverges
    if np.trace(b) <= EIG_TRUNCATION * pts.shape[0]:
        return np.inf
    return max_gen_eig(gram(kernel, pts), b)


def supnorm_objective(kernel: Kernel, measure: Measure, X, delta_sep: float = 0.0) -> float:
    """Worst power-function value over the measure nodes (minimize)."""
    pts, violation = _prepare(kernel, X, delta_sep)
    if pts is None:
        return penalty_value(violation)
    return phi_norm(kernel, pts, measure, np.inf)


@dataclass(frozen=True, eq=False)
class ObjectiveSpec:
    """A fully specified search problem: objective kind plus its context.

    evaluate() exposes the single minimize-convention callable the
    optimizer sees; trace-family values are negated at this boundary.
    """

    kind: str
    kernel: Kernel
    measure: Measure
    n: int
    domain: BoxDomain
    basis: EigenBasis | None = None
    delta_sep: float | None = None

    def __post_init__(self):
        if self.kind not in OBJECTIVE_KINDS:
            raise ValueError(f"unknown objective kind {self.kind!r}")
        if self.kind in ("trace_spectral", "subspace"):
            if self.basis is None:
                raise ValueError(f"{self.kind} objective requires an eigenbasis")
            if self.kind == "subspace" and self.basis.size != self.n:
                raise ValueError("subspace objective needs basis size == n")
        if self.n < 1:
            raise ValueError("need at least one sampling point")
        if self.kernel.dim != self.domain.dim:
            raise ValueError("kernel and domain dimension differ")
        if self.delta_sep is None:
            object.__setattr__(self, "delta_sep", default_delta_sep(self.domain))

    def clamp_points(self, x) -> np.ndarray:
        pts = np.asarray(x, dtype=np.float64).reshape(self.n, self.domain.dim)
        return self.domain.clamp(pts)

    def raw_value(self, pts: np.ndarray) -> float:
        if self.kind == "trace":
            return trace_objective(self.kernel, self.measure, pts, self.delta_sep)
        if self.kind == "trace_spectral":
            return trace_objective_spectral(self.basis, self.kernel, pts, self.delta_sep)
        if self.kind == "subspace":
            return subspace_objective(self.basis, self.kernel, pts, self.delta_sep)
        return supnorm_objective(self.kernel, self.measure, pts, self.delta_sep)

    def evaluate(self, x) -> float:
        """Minimize-convention objective of a flat or (n, d) coordinate array.

        Coordinates are clamped into the domain first; a separation
        violation after clamping returns the penalty.
        """
        pts = self.clamp_points(x)
        violation = separation_violation(pts, self.delta_sep)
        if violation > 0:
            return penalty_value(violation)
        value = self.raw_value(pts)
        if self.kind in ("trace", "trace_spectral"):
            return -value
        return value

    def natural_value(self, x) -> float:
        """The objective in its own convention (trace un-negated)."""
        value = self.evaluate(x)
        if is_penalty(value):
            return value
        return -value if self.kind in ("trace", "trace_spectral") else value
