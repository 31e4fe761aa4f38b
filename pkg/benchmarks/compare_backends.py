#!/usr/bin/env python3
"""Benchmark the compiled pairwise core against the numpy fallback.

Times raw kernel-matrix assembly at several shapes and a full supnorm
objective evaluation (the optimizer's hot loop), under both backends.

    python benchmarks/compare_backends.py [--repeats 200]
"""

import argparse
import time

import numpy as np

from optsample import _pairwise_np

try:
    from optsample import _pairwise_cy
except ImportError:
    _pairwise_cy = None


def best_of(fn, repeats):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_pairwise(repeats):
    rng = np.random.default_rng(0)
    shapes = [(6, 121, 1), (12, 201, 1), (36, 1681, 2), (100, 100, 3)]
    rows = []
    for n, m, d in shapes:
        a = np.ascontiguousarray(rng.uniform(-3, 3, (n, d)))
        b = np.ascontiguousarray(rng.uniform(-3, 3, (m, d)))
        for label, fn in (("sqdist", "sqdist"), ("sinc", "sinc_gram")):
            t_np = best_of(lambda: getattr(_pairwise_np, fn)(a, b), repeats)
            t_cy = (
                best_of(lambda: getattr(_pairwise_cy, fn)(a, b), repeats)
                if _pairwise_cy
                else np.nan
            )
            rows.append((f"{label} {n}x{m} d={d}", t_np, t_cy))
    return rows


def bench_objective(repeats):
    """Supnorm objective evaluation end to end under each backend."""
    import importlib

    from optsample import pairwise

    rows = []
    rng = np.random.default_rng(1)
    for backend, mod in (("python", _pairwise_np), ("compiled", _pairwise_cy)):
        if mod is None:
            continue
        pairwise.sqdist = mod.sqdist
        pairwise.sinc_gram = mod.sinc_gram
        import optsample as osp

        dom = osp.BoxDomain([-3.0], [3.0])
        mu = osp.grid_measure(dom, 201)
        spec = osp.ObjectiveSpec(
            kind="supnorm", kernel=osp.Kernel("gaussian", 1), measure=mu, n=12, domain=dom
        )
        X = rng.uniform(-3, 3, 12)
        rows.append((f"supnorm eval n=12 [{backend}]", best_of(lambda: spec.evaluate(X), repeats)))
    importlib.reload(pairwise)
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=200)
    args = parser.parse_args()

    if _pairwise_cy is None:
        print("compiled extension not built; showing numpy fallback only\n")

    print(f"{'case':<28}{'numpy':>12}{'compiled':>12}{'speedup':>10}")
    for name, t_np, t_cy in bench_pairwise(args.repeats):
        speed = f"{t_np / t_cy:9.2f}x" if np.isfinite(t_cy) else "       n/a"
        cy = f"{t_cy * 1e6:10.1f}us" if np.isfinite(t_cy) else "       n/a"
        print(f"{name:<28}{t_np * 1e6:10.1f}us{cy}{speed}")

    print()
    for name, t in bench_objective(args.repeats):
        print(f"{name:<40}{t * 1e6:10.1f}us")


if __name__ == "__main__":
    main()
