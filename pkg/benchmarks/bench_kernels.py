#!/usr/bin/env python3
"""Benchmark the compiled integration kernel against the pure-Python fallback.

Two workloads on the bundled example parameter set:

* throughput: one trajectory forced to run a fixed number of RK4 steps
  (the residual threshold is set to zero so early stopping never fires);
* basins: the 21x21 basin-of-attraction grid with the production
  early-stop settings, the workload the compiled kernel exists for.

Usage: python benchmarks/bench_kernels.py [--steps N] [--resolution R]
"""

import argparse
import time

import numpy as np

from assimdyn._backend import available_backends

# I_HS, I_LS, I_A, I_NA, I_E, c_HS, c_A, beta, m, A
EXAMPLE = (1.0, 0.6, 0.53, 0.3, 0.35, 0.7, 0.2, 0.5, 0.1, 0.0)


def bench_throughput(kernels, n_steps):
    dummy = np.empty(1)
    t0 = time.perf_counter()
    res = kernels.integrate_open(*EXAMPLE, 0.5, 0.5, 0.01, n_steps, 0, 0.0, 10, dummy, dummy, dummy)
    elapsed = time.perf_counter() - t0
    assert res[1] == n_steps
    return elapsed, n_steps


def bench_basins(kernels, resolution, t_max=2000.0, dt=0.01):
    n_max = int(round(t_max / dt))
    dummy = np.empty(1)
    centers = (np.arange(resolution) + 0.5) / resolution
    total_steps = 0
    t0 = time.perf_counter()
    for p0 in centers:
        for q0 in centers:
            res = kernels.integrate_open(*EXAMPLE, p0, q0, dt, n_max, 0, 1e-10, 10, dummy, dummy, dummy)
            total_steps += res[1]
    return time.perf_counter() - t0, total_steps


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--steps", type=int, default=2_000_000, help="RK4 steps for the throughput run")
    ap.add_argument("--resolution", type=int, default=21, help="basin grid resolution per axis")
    args = ap.parse_args()

    backends = available_backends()
    if "c" not in backends:
        print("note: compiled kernel not built, benchmarking the fallback only")

    results = {}
    for name, kernels in sorted(backends.items()):
        t_thr, n_thr = bench_throughput(kernels, args.steps)
        t_bas, n_bas = bench_basins(kernels, args.resolution)
        results[name] = (t_thr, n_thr, t_bas, n_bas)
        print(f"{name:>8}  throughput: {n_thr / t_thr / 1e6:8.2f} M steps/s  ({t_thr:7.3f} s)"
              f"   basins {args.resolution}x{args.resolution}: {t_bas:7.3f} s  ({n_bas} steps)")

    if {"c", "python"} <= results.keys():
        thr_speedup = results["python"][0] / results["c"][0]
        bas_speedup = results["python"][2] / results["c"][2]
        print(f"\nspeedup (compiled over fallback): {thr_speedup:.1f}x throughput, {bas_speedup:.1f}x basins")


if __name__ == "__main__":
    main()
