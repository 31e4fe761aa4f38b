"""Optimal-vs-equally-spaced benchmark harness.

One experiment fixes a kernel, a domain, a measure, and an objective;
the optimizer produces a point configuration which is compared against
the equally spaced baseline on randomly drawn kernel-expansion targets.
The figures of merit are relative L2 reconstruction errors of the
minimal-norm interpolant from each configuration's samples. Everything
is deterministic for a fixed seed: each trial owns a stream split from
the master seed by trial index, so reports are identical for any thread
count.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._parallel import parallel_map
from .errors import DegenerateTargetError
from .kernels import Kernel
from .measures import BoxDomain, Measure, PointSet, integrate, tensor_grid_points
from .objectives import ObjectiveSpec
from .rkhs import Expansion, eval_expansion, min_norm_interpolant
from .search import SearchConfig, SearchResult, optimize_points
from .spectral import kl_eigenbasis

MAX_TARGET_REDRAWS = 100


def equally_spaced(domain: BoxDomain, n: int) -> PointSet:
    """The conventional uniform baseline layout.

    1D: endpoint-inclusive uniform spacing (midpoint for n = 1); higher
    dimensions take the tensor product per axis, so n must be a perfect
    d-th power.
    """
    if n < 1:
        raise ValueError("need at least one point")
    d = domain.dim
    if d == 1:
        return PointSet(tensor_grid_points(domain, n))
    k = round(n ** (1.0 / d))
    for candidate in (k - 1, k, k + 1):
        if candidate >= 1 and candidate**d == n:
            return PointSet(tensor_grid_points(domain, candidate))
    raise ValueError(f"n={n} is not a perfect {d}-th power")


def random_target(
    kernel: Kernel,
    domain: BoxDomain,
    rng: np.random.Generator,
    terms_min: int = 5,
    terms_max: int = 15,
    coeff_range: tuple[float, float] = (-1.0, 1.0),
) -> Expansion:
    """Random finite kernel expansion with uniform coefficients and centers.

    Draw order (term count, then coefficients, then centers) is part of
    the determinism contract.
    """
    if terms_min > terms_max or terms_min < 1:
        raise ValueError("need 1 <= terms_min <= terms_max")
    j = int(rng.integers(terms_min, terms_max + 1))
    coeffs = rng.uniform(coeff_range[0], coeff_range[1], size=j)
    centers = rng.uniform(domain.lo, domain.hi, size=(j, domain.dim))
    return Expansion(centers=centers, coefficients=coeffs, kernel=kernel)


def relative_error(f: Expansion, points, measure: Measure) -> float:
    """Relative L2 error of the minimal-norm reconstruction of f from
    its samples at the given points, by quadrature on the measure."""
    fvals = eval_expansion(f, measure.nodes)
    denom2 = integrate(measure, fvals * fvals)
    if denom2 <= 1e-28:
        raise DegenerateTargetError("target is numerically zero on the measure")
    pts = points.points if isinstance(points, PointSet) else np.asarray(points, dtype=np.float64)
    samples = eval_expansion(f, pts)
    interp = min_norm_interpolant(f.kernel, pts, samples)
    resid = eval_expansion(interp, measure.nodes) - fvals
    return float(np.sqrt(max(integrate(measure, resid * resid), 0.0) / denom2))


@dataclass(frozen=True, eq=False)
class ExperimentConfig:
    kernel: Kernel
    domain: BoxDomain
    n: int
    objective: str
    measure: Measure
    trials: int = 100
    terms_min: int = 5
    terms_max: int = 15
    coeff_range: tuple[float, float] = (-1.0, 1.0)
    seed: int = 0
    search: SearchConfig | None = None
    eval_measure: Measure | None = None

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.terms_min > self.terms_max or self.terms_min < 1:
            raise ValueError("need 1 <= terms_min <= terms_max")

    @property
    def error_measure(self) -> Measure:
        return self.eval_measure if self.eval_measure is not None else self.measure

    @property
    def search_config(self) -> SearchConfig:
        return self.search if self.search is not None else SearchConfig(seed=self.seed)


@dataclass(frozen=True, eq=False)
class ExperimentReport:
    """Per-trial error pairs with their summary statistics."""

    e_opt: np.ndarray
    e_equ: np.ndarray
    mean_improvement: float
    std_improvement: float
    count_opt_worse: int
    points_opt: PointSet
    points_equ: PointSet
    objective_opt: float
    objective_equ: float
    search_result: SearchResult
    config: ExperimentConfig

    @property
    def trials(self) -> int:
        return self.e_opt.shape[0]


def build_objective_spec(config: ExperimentConfig) -> ObjectiveSpec:
    basis = None
    if config.objective in ("subspace", "trace_spectral"):
        size = config.n if config.objective == "subspace" else config.measure.count
        basis = kl_eigenbasis(config.kernel, config.measure, size)
    return ObjectiveSpec(
        kind=config.objective,
        kernel=config.kernel,
        measure=config.measure,
        n=config.n,
        domain=config.domain,
        basis=basis,
    )


def _draw_valid_target(config: ExperimentConfig, trial: int) -> Expansion:
    rng = np.random.default_rng(
        np.random.SeedSequence(entropy=[config.seed, 1], spawn_key=(trial,))
    )
    for _ in range(MAX_TARGET_REDRAWS):
        f = random_target(
            config.kernel,
            config.domain,
            rng,
            config.terms_min,
            config.terms_max,
            config.coeff_range,
        )
        fvals = eval_expansion(f, config.error_measure.nodes)
        if integrate(config.error_measure, fvals * fvals) > 1e-28:
            return f
    raise DegenerateTargetError(
        f"trial {trial}: no usable target after {MAX_TARGET_REDRAWS} redraws"
    )


def run_experiment(config: ExperimentConfig) -> ExperimentReport:
    """Run the full comparison; deterministic for a fixed config."""
    spec = build_objective_spec(config)
    result = optimize_points(spec, config.search_config)
    points_opt = result.points
    points_equ = equally_spaced(config.domain, config.n)
    error_measure = config.error_measure

    def one_trial(trial: int):
        f = _draw_valid_target(config, trial)
        return (
            relative_error(f, points_opt, error_measure),
            relative_error(f, points_equ, error_measure),
        )

    pairs = parallel_map(one_trial, range(config.trials))
    e_opt = np.array([p[0] for p in pairs])
    e_equ = np.array([p[1] for p in pairs])
    improvement = e_equ - e_opt
    mean = float(improvement.mean())
    std = float(improvement.std(ddof=1)) if config.trials > 1 else 0.0
    return ExperimentReport(
        e_opt=e_opt,
        e_equ=e_equ,
        mean_improvement=mean,
        std_improvement=std,
        count_opt_worse=int(np.sum(e_opt > e_equ)),
        points_opt=points_opt,
        points_equ=points_equ,
        objective_opt=result.objective_value,
        objective_equ=spec.evaluate(points_equ.points),
        search_result=result,
        config=config,
    )
