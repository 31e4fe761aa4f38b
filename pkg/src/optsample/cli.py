"""Command-line interface and serialized outputs.

Subcommands:

* ``points``      solve for an optimal configuration, write points.csv,
                  objective.json, manifest.json
* ``experiment``  run an optimal-vs-equally-spaced comparison from a JSON
                  config, write errors.csv, summary.json, points_*.csv,
                  plotdata_errors.csv, manifest.json
* ``oracle``      closed-form / exhaustive cross-checks and power-function
                  profiles
* ``replay``      re-run any manifest.json into a new directory,
                  reproducing its outputs byte-for-byte

Exit status: 0 success, 1 usage/config error, 2 numerical or search
failure. CSV numerics carry 17 significant digits (lossless round-trip).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .errors import NumericalError
from .kernels import FAMILIES, Kernel
from .measures import BoxDomain, discrete_uniform_measure, grid_measure
from .objectives import OBJECTIVE_KINDS, ObjectiveSpec
from .closedform import exp_two_point_optimal, supmin_v_bruteforce
from .experiments import ExperimentConfig, equally_spaced, run_experiment
from .pairwise import backend_name
from .rkhs import phi_norm, power_function
from .search import SearchConfig, brute_force, optimize_points
from .spectral import k_omega, kl_eigenbasis

DEFAULT_GRID_1D = 201
DEFAULT_GRID_ND = 41


class UsageError(Exception):
    """Bad flags or config; maps to exit status 1."""


def fmt17(x: float) -> str:
    return format(float(x), ".17g")


def parse_domain(text: str) -> list[list[float]]:
    """Parse 'lo:hi[,lo:hi...]' into [[lo...], [hi...]]."""
    lo, hi = [], []
    for axis in text.split(","):
        parts = axis.split(":")
        if len(parts) != 2:
            raise UsageError(f"bad domain axis {axis!r}; expected lo:hi")
        try:
            a, b = float(parts[0]), float(parts[1])
        except ValueError as exc:
            raise UsageError(f"bad domain axis {axis!r}: {exc}") from None
        lo.append(a)
        hi.append(b)
    return [lo, hi]


def parse_resolution(text: str, dim: int) -> list[int]:
    try:
        res = [int(p) for p in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"bad grid resolution {text!r}: {exc}") from None
    if len(res) == 1 and dim > 1:
        res = res * dim
    if len(res) != dim:
        raise UsageError(f"grid resolution needs 1 or {dim} entries")
    return res


def read_points_csv(path: Path) -> np.ndarray:
    """Points from the points.csv format (header index,x1[,x2...])."""
    lines = path.read_text().strip().splitlines()
    if not lines or not lines[0].startswith("index"):
        raise UsageError(f"{path}: expected a points CSV with an index,x1[,...] header")
    rows = [[float(v) for v in line.split(",")[1:]] for line in lines[1:]]
    if not rows:
        raise UsageError(f"{path}: no point rows")
    return np.array(rows)


def write_points_csv(path: Path, points: np.ndarray) -> None:
    dim = points.shape[1]
    header = "index," + ",".join(f"x{i + 1}" for i in range(dim))
    lines = [header]
    for i, row in enumerate(points):
        lines.append(",".join([str(i)] + [fmt17(v) for v in row]))
    path.write_text("\n".join(lines) + "\n")


def write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def write_manifest(outdir: Path, subcommand: str, config: dict, outputs: list[str]) -> None:
    write_json(
        outdir / "manifest.json",
        {
            "subcommand": subcommand,
            "version": __version__,
            "backend": backend_name(),
            "seed": config.get("seed"),
            "config": config,
            "outputs": outputs,
        },
    )


def build_measure(cfg: dict, domain: BoxDomain) -> Measure:
    kind = cfg.get("type", "lebesgue")
    if kind == "lebesgue":
        return grid_measure(domain, cfg["resolution"])
    if kind == "equally_spaced":
        return discrete_uniform_measure(equally_spaced(domain, int(cfg["count"])).points)
    if kind == "nodes":
        return discrete_uniform_measure(read_points_csv(Path(cfg["file"])))
    raise UsageError(f"unknown measure type {kind!r}")


def build_search(cfg: dict, seed: int) -> SearchConfig:
    return SearchConfig(
        restarts=int(cfg.get("restarts", 20)),
        max_iters=(int(cfg["max_iters"]) if cfg.get("max_iters") is not None else None),
        tol=float(cfg.get("tol", 1e-10)),
        seed=int(cfg.get("seed", seed)),
        simplex_scale=(
            float(cfg["simplex_scale"]) if cfg.get("simplex_scale") is not None else None
        ),
    )


# ---------------------------------------------------------------------------
# points


def run_points(config: dict, outdir: Path) -> list[str]:
    domain = BoxDomain(*config["domain"])
    kernel = Kernel(config["kernel"], domain.dim)
    measure = build_measure(config["measure"], domain)
    n = int(config["n"])
    basis = None
    if config["objective"] == "subspace":
        basis = kl_eigenbasis(kernel, measure, n)
    spec = ObjectiveSpec(
        kind=config["objective"],
        kernel=kernel,
        measure=measure,
        n=n,
        domain=domain,
        basis=basis,
    )
    result = optimize_points(spec, build_search(config.get("search", {}), config["seed"]))
    points = result.points.points

    write_points_csv(outdir / "points.csv", points)
    natural = spec.natural_value(points)
    write_json(
        outdir / "objective.json",
        {
            "kind": config["objective"],
            "value": natural,
            "k_omega": k_omega(kernel, measure),
            "phi_norm_2": phi_norm(kernel, points, measure, 2),
            "phi_norm_inf": phi_norm(kernel, points, measure, np.inf),
            "converged": result.converged,
            "best_start_index": result.best_start_index,
        },
    )
    outputs = ["points.csv", "objective.json"]
    write_manifest(outdir, "points", config, outputs)
    return outputs


def points_config_from_flags(args) -> dict:
    domain = parse_domain(args.domain)
    dim = args.dim if args.dim is not None else len(domain[0])
    if dim != len(domain[0]):
        raise UsageError(f"--dim {dim} disagrees with a {len(domain[0])}-axis --domain")
    if args.measure == "lebesgue":
        grid = args.grid or (
            str(DEFAULT_GRID_1D) if dim == 1 else ",".join([str(DEFAULT_GRID_ND)] * dim)
        )
        measure = {"type": "lebesgue", "resolution": parse_resolution(grid, dim)}
    elif args.measure.startswith("nodes:"):
        measure = {"type": "nodes", "file": args.measure[len("nodes:") :]}
    else:
        raise UsageError(f"bad --measure {args.measure!r}; expected lebesgue or nodes:<file>")
    config = {
        "kernel": args.kernel,
        "domain": domain,
        "n": args.n,
        "objective": args.objective,
        "measure": measure,
        "seed": args.seed,
        "search": {"restarts": args.restarts, "seed": args.seed},
    }
    return config


# ---------------------------------------------------------------------------
# experiment

EXPERIMENT_KEYS = {
    "kernel",
    "dim",
    "domain",
    "n",
    "objective",
    "measure",
    "trials",
    "target",
    "seed",
    "search",
    "eval_grid_factor",
}


def validate_experiment_config(raw: dict) -> dict:
    for key in raw:
        if key not in EXPERIMENT_KEYS:
            raise UsageError(f"unknown experiment config key {key!r}")
    for key in ("kernel", "domain", "n", "objective", "measure"):
        if key not in raw:
            raise UsageError(f"experiment config is missing required key {key!r}")
    if raw["kernel"] not in FAMILIES:
        raise UsageError(f"config key 'kernel': unknown family {raw['kernel']!r}")
    if raw["objective"] not in OBJECTIVE_KINDS:
        raise UsageError(f"config key 'objective': unknown kind {raw['objective']!r}")
    config = dict(raw)
    if isinstance(config["domain"], str):
        config["domain"] = parse_domain(config["domain"])
    config.setdefault("trials", 100)
    config.setdefault("seed", 0)
    config.setdefault("target", {})
    config.setdefault("search", {})
    config.setdefault("eval_grid_factor", None)
    for key, low in (("n", 1), ("trials", 1), ("seed", 0)):
        if not isinstance(config[key], int) or config[key] < low:
            raise UsageError(f"config key {key!r} must be an integer >= {low}")
    target = config["target"]
    for key in target:
        if key not in {"terms_min", "terms_max", "coeff_range"}:
            raise UsageError(f"unknown target config key {key!r}")
    return config


def experiment_from_config(config: dict) -> ExperimentConfig:
    domain = BoxDomain(*config["domain"])
    kernel = Kernel(config["kernel"], domain.dim)
    measure = build_measure(config["measure"], domain)
    eval_measure = None
    factor = config.get("eval_grid_factor")
    if factor:
        if config["measure"].get("type", "lebesgue") != "lebesgue":
            raise UsageError("eval_grid_factor requires a lebesgue measure")
        res = [int(factor) * r for r in config["measure"]["resolution"]]
        eval_measure = grid_measure(domain, res)
    target = config["target"]
    return ExperimentConfig(
        kernel=kernel,
        domain=domain,
        n=config["n"],
        objective=config["objective"],
        measure=measure,
        trials=config["trials"],
        terms_min=int(target.get("terms_min", 5)),
        terms_max=int(target.get("terms_max", 15)),
        coeff_range=tuple(target.get("coeff_range", (-1.0, 1.0))),
        seed=config["seed"],
        search=build_search(config["search"], config["seed"]),
        eval_measure=eval_measure,
    )


def run_experiment_files(config: dict, outdir: Path) -> list[str]:
    report = run_experiment(experiment_from_config(config))

    lines = ["trial,e_opt,e_equ"]
    for t in range(report.trials):
        lines.append(f"{t},{fmt17(report.e_opt[t])},{fmt17(report.e_equ[t])}")
    (outdir / "errors.csv").write_text("\n".join(lines) + "\n")

    plot = ["trial,series,value"]
    for t in range(report.trials):
        plot.append(f"{t},e_opt,{fmt17(report.e_opt[t])}")
        plot.append(f"{t},e_equ,{fmt17(report.e_equ[t])}")
    (outdir / "plotdata_errors.csv").write_text("\n".join(plot) + "\n")

    write_points_csv(outdir / "points_opt.csv", report.points_opt.points)
    write_points_csv(outdir / "points_equ.csv", report.points_equ.points)
    write_json(
        outdir / "summary.json",
        {
            "mean_improvement": report.mean_improvement,
            "std_improvement": report.std_improvement,
            "count_opt_worse": report.count_opt_worse,
            "points_opt": report.points_opt.points.tolist(),
            "points_equ": report.points_equ.points.tolist(),
            "objective_opt": report.objective_opt,
            "objective_equ": report.objective_equ,
            "trials": report.trials,
        },
    )
    outputs = [
        "errors.csv",
        "plotdata_errors.csv",
        "points_opt.csv",
        "points_equ.csv",
        "summary.json",
    ]
    write_manifest(outdir, "experiment", config, outputs)
    return outputs


# ---------------------------------------------------------------------------
# oracle


def run_oracle(config: dict, outdir: Path) -> list[str]:
    mode = config["mode"]
    if mode == "exp2pt":
        (a,), (b,) = config["domain"]
        closed = exp_two_point_optimal(a, b)
        swept = supmin_v_bruteforce(a, b, int(config["grid"]))
        gap = max(abs(closed.x1 - swept.x1), abs(closed.x2 - swept.x2))
        write_json(
            outdir / "oracle_exp2pt.json",
            {
                "closed_form": {"x1": closed.x1, "x2": closed.x2, "value": closed.value},
                "grid_search": {"x1": swept.x1, "x2": swept.x2, "value": swept.value},
                "max_point_gap": gap,
                "grid_step": 3.0 * (b - a) / (int(config["grid"]) - 1),
            },
        )
        outputs = ["oracle_exp2pt.json"]
    elif mode == "bruteforce":
        domain = BoxDomain(*config["domain"])
        kernel = Kernel(config["kernel"], domain.dim)
        measure = build_measure(config["measure"], domain)
        n = int(config["n"])
        basis = None
        if config["objective"] == "subspace":
            basis = kl_eigenbasis(kernel, measure, n)
        spec = ObjectiveSpec(
            kind=config["objective"],
            kernel=kernel,
            measure=measure,
            n=n,
            domain=domain,
            basis=basis,
        )
        candidates = equally_spaced(domain, int(config["candidates"])).points
        result = brute_force(spec, candidates, n)
        write_points_csv(outdir / "bruteforce_points.csv", result.points.points)
        write_json(
            outdir / "bruteforce.json",
            {
                "objective_value": result.objective_value,
                "natural_value": spec.natural_value(result.points.points),
                "subsets_evaluated": result.starts_tried,
                "best_subset_rank": result.best_start_index,
            },
        )
        outputs = ["bruteforce_points.csv", "bruteforce.json"]
    elif mode == "phi-profile":
        domain = BoxDomain(*config["domain"])
        kernel = Kernel(config["kernel"], domain.dim)
        measure = build_measure(config["measure"], domain)
        points = np.array(config["points"], dtype=np.float64)
        phi = power_function(kernel, points, measure.nodes)
        header = ",".join(["x", "y"][: domain.dim] + ["phi"])
        lines = [header]
        for node, value in zip(measure.nodes, phi):
            lines.append(",".join([fmt17(c) for c in node] + [fmt17(value)]))
        (outdir / "phi_profile.csv").write_text("\n".join(lines) + "\n")
        outputs = ["phi_profile.csv"]
    else:
        raise UsageError(f"unknown oracle mode {mode!r}")
    write_manifest(outdir, "oracle", config, outputs)
    return outputs


def oracle_config_from_flags(args) -> dict:
    domain = parse_domain(args.domain)
    config: dict = {"mode": args.mode, "domain": domain, "seed": args.seed}
    if args.mode == "exp2pt":
        if len(domain[0]) != 1:
            raise UsageError("exp2pt works on a 1D interval")
        config["grid"] = args.grid_count if args.grid_count is not None else 400
        return config
    dim = len(domain[0])
    if args.kernel is None:
        raise UsageError(f"--kernel is required for mode {args.mode}")
    grid = args.grid or (
        str(DEFAULT_GRID_1D) if dim == 1 else ",".join([str(DEFAULT_GRID_ND)] * dim)
    )
    config["kernel"] = args.kernel
    config["measure"] = {"type": "lebesgue", "resolution": parse_resolution(grid, dim)}
    if args.mode == "bruteforce":
        if args.n is None or args.candidates is None:
            raise UsageError("bruteforce mode requires --n and --candidates")
        config["n"] = args.n
        config["objective"] = args.objective
        config["candidates"] = args.candidates
    elif args.mode == "phi-profile":
        if args.points_file is None:
            raise UsageError("phi-profile mode requires --points-file")
        config["points"] = read_points_csv(Path(args.points_file)).tolist()
    return config


# ---------------------------------------------------------------------------
# driver

RUNNERS = {
    "points": run_points,
    "experiment": run_experiment_files,
    "oracle": run_oracle,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # argparse defaults to exit status 2; the contract reserves 2 for
        # numerical failures and 1 for usage errors
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="optsample", description="Optimal sampling-point configurations")
    parser.add_argument("--version", action="version", version=f"optsample {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    p_points = sub.add_parser("points", help="solve for an optimal point configuration")
    p_points.add_argument("--kernel", required=True, choices=FAMILIES)
    p_points.add_argument("--dim", type=int, default=None)
    p_points.add_argument(
        "--domain", required=True,
        help="lo:hi[,lo:hi...]; write --domain=-3:3 for negative bounds",
    )
    p_points.add_argument("--n", type=int, required=True)
    p_points.add_argument(
        "--objective", required=True, choices=("trace", "subspace", "supnorm")
    )
    p_points.add_argument("--grid", default=None, help="measure resolution per axis")
    p_points.add_argument("--measure", default="lebesgue", help="lebesgue or nodes:<file>")
    p_points.add_argument("--restarts", type=int, default=20)
    p_points.add_argument("--seed", type=int, default=0)
    p_points.add_argument("--out", required=True)

    p_exp = sub.add_parser("experiment", help="optimal vs equally spaced comparison")
    p_exp.add_argument("config", help="JSON experiment config")
    p_exp.add_argument("--out", required=True)

    p_oracle = sub.add_parser("oracle", help="closed-form and exhaustive cross-checks")
    p_oracle.add_argument("--mode", required=True, choices=("exp2pt", "bruteforce", "phi-profile"))
    p_oracle.add_argument("--domain", required=True)
    p_oracle.add_argument("--kernel", choices=FAMILIES, default=None)
    p_oracle.add_argument("--n", type=int, default=None)
    p_oracle.add_argument(
        "--objective", choices=("trace", "subspace", "supnorm"), default="trace"
    )
    p_oracle.add_argument("--candidates", type=int, default=None)
    p_oracle.add_argument("--grid-count", type=int, default=None, help="exp2pt sweep grid")
    p_oracle.add_argument("--grid", default=None, help="measure resolution per axis")
    p_oracle.add_argument("--points-file", default=None)
    p_oracle.add_argument("--seed", type=int, default=0)
    p_oracle.add_argument("--out", required=True)

    p_replay = sub.add_parser("replay", help="re-run a manifest byte-for-byte")
    p_replay.add_argument("manifest")
    p_replay.add_argument("--out", required=True)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits on usage errors and --help
        return int(exc.code or 0)
    try:
        if args.subcommand == "replay":
            manifest = json.loads(Path(args.manifest).read_text())
            subcommand = manifest.get("subcommand")
            if subcommand not in RUNNERS:
                raise UsageError(f"manifest has unknown subcommand {subcommand!r}")
            if manifest.get("backend") != backend_name():
                raise NumericalError(
                    f"manifest was produced with the {manifest.get('backend')!r} backend "
                    f"but {backend_name()!r} is active; results would not be bit-identical"
                )
            config = manifest["config"]
        else:
            subcommand = args.subcommand
            if subcommand == "points":
                config = points_config_from_flags(args)
            elif subcommand == "experiment":
                raw = json.loads(Path(args.config).read_text())
                config = validate_experiment_config(raw)
            else:
                config = oracle_config_from_flags(args)

        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        RUNNERS[subcommand](config, outdir)
    except UsageError as exc:
        print(f"optsample: error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"optsample: error: {exc}", file=sys.stderr)
        return 1
    except NumericalError as exc:
        print(f"optsample: numerical failure: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
