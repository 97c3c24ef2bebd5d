#!/usr/bin/env python3
"""Benchmark the compiled genie-search kernels against the numpy fallback.

Times the scalar objective, the coarse grid scan, the coordinate descent and
the full upper-bound search on every available backend, then prints a table
with speedups.

Usage:
    python benchmarks/bench_backends.py [--repeats 5] [--draws 50]
"""

import argparse
import time

import numpy as np

from pimac import ChannelParams, SearchConfig
from pimac.backend import available_backends
from pimac.sumcap import genie_upper_bound


def time_call(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return best, result


def bench_backend(mod, params_list, config, repeats):
    rho_grid = np.ascontiguousarray(
        np.clip(np.linspace(-1.0, 1.0, config.n_rho), -config.rho_cap, config.rho_cap)
    )
    results = {}

    def run_objective():
        total = 0.0
        for p in params_list:
            for rho in (-0.5, 0.0, 0.5):
                total += mod.objective(
                    p.p1, p.p2, p.p3, p.h12, p.h22, p.h31, rho, -rho, 0.5, 0.5
                )
        return total

    def run_grid():
        out = 0.0
        for p in params_list:
            out += mod.grid_scan(
                p.p1, p.p2, p.p3, p.h12, p.h22, p.h31,
                rho_grid, config.n_eta, config.eta_floor,
            )[0]
        return out

    def run_descent():
        out = 0.0
        for p in params_list:
            out += mod.coordinate_descent(
                p.p1, p.p2, p.p3, p.h12, p.h22, p.h31,
                0.0, 0.0, 0.5, 0.5,
                config.init_step, config.min_step, config.max_evals,
                config.eta_floor, config.rho_cap,
            )[0]
        return out

    results["objective x%d" % (3 * len(params_list))], _ = time_call(run_objective, repeats)
    results["grid_scan x%d" % len(params_list)], grid_val = time_call(run_grid, repeats)
    results["descent   x%d" % len(params_list)], desc_val = time_call(run_descent, repeats)
    return results, grid_val, desc_val


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=3, help="timing repeats, best kept")
    parser.add_argument("--draws", type=int, default=50, help="random channels per measurement")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    params_list = [
        ChannelParams(*rng.uniform(0.1, 100.0, 3), *rng.uniform(-1.0, 1.0, 3))
        for _ in range(args.draws)
    ]
    config = SearchConfig()
    backends = available_backends()
    print(f"backends available: {', '.join(backends)}\n")

    timings = {}
    for name, mod in backends.items():
        results, grid_val, desc_val = bench_backend(mod, params_list, config, args.repeats)
        timings[name] = results
        print(f"{name}:")
        for label, seconds in results.items():
            print(f"  {label:<18} {seconds * 1e3:9.2f} ms")
        print(f"  (checksum grid {grid_val:.6f}, descent {desc_val:.6f})")
        print()

    if len(timings) == 2:
        pure, compiled = timings["pure-python"], timings["compiled"]
        print("speedup (pure-python / compiled):")
        for label in pure:
            print(f"  {label:<18} {pure[label] / compiled[label]:6.1f}x")
        print()

    # end-to-end search timing on the selected backend
    fig5 = ChannelParams(10.0, 10.0, 10.0, 0.2, 0.1, 0.2)
    start = time.perf_counter()
    point = genie_upper_bound(fig5, config)
    elapsed = time.perf_counter() - start
    print(f"full genie_upper_bound (selected backend): {elapsed * 1e3:.2f} ms "
          f"-> {point.value:.6f} bits")


if __name__ == "__main__":
    main()
