#!/usr/bin/env python3
"""Benchmark the JIT-compiled kernels against the pure-numpy fallback.

The workloads mirror what the residual sweeps actually evaluate: an 8-term
exponential sum (three-soliton tau body) and a 23-term Laurent polynomial
(similarity tau body for n = 5), each with its first two x-derivatives.

Run:  python benchmarks/bench_kernels.py [--sizes 1e4,1e5,1e6] [--reps 7]
"""

import argparse
import time

import numpy as np

from susykdv import kernels
from susykdv.fields import _expsum_arrays, _laurent_arrays
from susykdv.soliton import build_tau_pair, preset_spec
from susykdv.yablonskii import similarity_tau


def _median_time(fn, reps):
    times = []
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return float(np.median(times))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="1e4,1e5,1e6")
    ap.add_argument("--reps", type=int, default=7)
    args = ap.parse_args()
    sizes = [int(float(s)) for s in args.sizes.split(",")]

    tau1, _ = build_tau_pair(preset_spec("fig2"))
    exp_args = _expsum_arrays(tau1.body)
    sim1, sim2 = similarity_tau(5)
    lau_args = _laurent_arrays(sim2.body)

    if kernels.backend_name() != "numba":
        print("numba backend unavailable; nothing to compare")
        return

    kernels.warmup()
    rng = np.random.default_rng(0)

    print(f"{'workload':<22}{'n':>10}{'numpy':>12}{'numba':>12}{'speedup':>9}")
    for n in sizes:
        xs = rng.uniform(-10, 10, n)
        ts = rng.uniform(-10, 10, n)
        ss = np.cbrt(np.abs(ts) + 0.5)
        for label, fn_args, runner in (
                ("expsum (8 terms)", exp_args,
                 lambda a, x=xs, t=ts: kernels.expsum_eval012(*a, x, t)),
                ("laurent (n=5 tau)", lau_args,
                 lambda a, x=xs, s=ss: kernels.laurent_eval012(*a, x, s)),
        ):
            kernels.set_backend("numpy")
            t_np = _median_time(lambda: runner(fn_args), args.reps)
            kernels.set_backend("numba")
            t_nb = _median_time(lambda: runner(fn_args), args.reps)
            print(f"{label:<22}{n:>10}{t_np * 1e3:>10.2f}ms{t_nb * 1e3:>10.2f}ms"
                  f"{t_np / t_nb:>8.2f}x")


if __name__ == "__main__":
    main()
