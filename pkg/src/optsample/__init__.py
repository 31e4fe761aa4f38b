"""optsample: optimal finite sampling-point configurations for
reconstruction in reproducing-kernel function spaces.

The library computes point configurations that minimize reconstruction
error for kernel-based minimal-norm interpolation, through a trace
(captured-energy) objective, a subspace-distance objective against the
top eigenfunctions of the kernel integral operator, or the worst-case
power function; plus the benchmark harness comparing optimal against
equally spaced points.
"""

__version__ = "0.1.0"

from .closedform import (
    TwoPointSolution,
    exp_two_point_optimal,
    radial_one_point_optimal,
    supmin_v_bruteforce,
    v_function,
)
from .errors import (
    DegenerateTargetError,
    NumericalError,
    RankDeficientError,
    SearchFailedError,
    SingularMatrixError,
)
from .experiments import (
    ExperimentConfig,
    ExperimentReport,
    equally_spaced,
    random_target,
    relative_error,
    run_experiment,
)
from .kernels import Kernel, gram, kernel_eval
from .linalg import chol_factor, chol_solve, inv_sqrt, max_gen_eig, sym_eig
from .measures import (
    BoxDomain,
    Measure,
    PointSet,
    discrete_uniform_measure,
    grid_measure,
    integrate,
)
from .objectives import (
    ObjectiveSpec,
    subspace_objective,
    supnorm_objective,
    trace_objective,
    trace_objective_spectral,
)
from .rkhs import (
    Expansion,
    Interpolant,
    energy_gap_bound,
    eval_expansion,
    min_norm_interpolant,
    phi_norm,
    power_function,
    rkhs_inner,
    rkhs_norm,
    subspace_distance,
    subspace_distance_direct,
)
from .search import SearchConfig, SearchResult, brute_force, greedy_exchange, optimize_points
from .spectral import EigenBasis, bK_matrix, eval_eigenfunctions, k_omega, kl_eigenbasis, subspace_energy

__all__ = [
    "BoxDomain",
    "DegenerateTargetError",
    "EigenBasis",
    "ExperimentConfig",
    "ExperimentReport",
    "Expansion",
    "Interpolant",
    "Kernel",
    "Measure",
    "NumericalError",
    "ObjectiveSpec",
    "PointSet",
    "RankDeficientError",
    "SearchConfig",
    "SearchFailedError",
    "SearchResult",
    "SingularMatrixError",
    "TwoPointSolution",
    "bK_matrix",
    "brute_force",
    "chol_factor",
    "chol_solve",
    "discrete_uniform_measure",
    "energy_gap_bound",
    "equally_spaced",
    "eval_eigenfunctions",
    "eval_expansion",
    "exp_two_point_optimal",
    "gram",
    "greedy_exchange",
    "grid_measure",
    "integrate",
    "inv_sqrt",
    "k_omega",
    "kernel_eval",
    "kl_eigenbasis",
    "max_gen_eig",
    "min_norm_interpolant",
    "optimize_points",
    "phi_norm",
    "power_function",
    "radial_one_point_optimal",
    "random_target",
    "relative_error",
    "rkhs_inner",
    "rkhs_norm",
    "run_experiment",
    "subspace_distance",
    "subspace_distance_direct",
    "subspace_energy",
    "subspace_objective",
    "supmin_v_bruteforce",
    "supnorm_objective",
    "sym_eig",
    "trace_objective",
    "trace_objective_spectral",
    "v_function",
]
