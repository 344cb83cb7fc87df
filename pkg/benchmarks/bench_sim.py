#!/usr/bin/env python3
"""Time the compiled sampling kernel against the numpy fallback.

Both backends are driven through the same frontend and must produce
identical per-trial tallies; the benchmark asserts that before printing
the timing table.

    python benchmarks/bench_sim.py --trials 2000
"""

import argparse
import time

from blockcirc.das import DasParams
from blockcirc.das_sim import SimConfig, available_backends, simulate


def bench(config, backend, c0, workers):
    t0 = time.perf_counter()
    rep = simulate(config, c0_values=[c0], backend=backend, workers=workers)
    return time.perf_counter() - t0, rep


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=1444)
    ap.add_argument("--d", type=int, default=49)
    ap.add_argument("--c", type=int, default=1000)
    ap.add_argument("--s", type=int, default=72)
    ap.add_argument("--c0", type=int, default=900)
    ap.add_argument("--trials", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    params = DasParams(n=args.n, k=1, d=args.d, c=args.c, s=args.s)
    config = SimConfig(params=params, trials=args.trials, seed=args.seed)
    backends = available_backends()
    print(f"config: n={args.n} d={args.d} c={args.c} s={args.s} "
          f"trials={args.trials} workers={args.workers}")
    results = {}
    for name in backends:
        elapsed, rep = bench(config, name, args.c0, args.workers)
        results[name] = (elapsed, rep)
        rate = args.trials / elapsed
        print(f"{name:>9}: {elapsed:8.3f}s  ({rate:8.1f} trials/s)  "
              f"p1={rep.p1_est:.5f}  Pr(Y>{args.c0})={rep.y_tail[args.c0]:.4f}")
    if len(results) == 2:
        a, b = (results[n][1] for n in backends)
        assert (a.y_counts == b.y_counts).all(), "backends disagree on Y"
        assert (a.z_counts == b.z_counts).all(), "backends disagree on Z"
        speedup = results["numpy"][0] / results["compiled"][0]
        print(f"backends agree on every trial; compiled speedup {speedup:.1f}x")


if __name__ == "__main__":
    main()
