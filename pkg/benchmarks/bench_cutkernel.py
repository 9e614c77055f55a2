"""Benchmark the compiled cut-enumeration kernel against the portable
fallback on random multigraphs of growing size.

Run:  python3 benchmarks/bench_cutkernel.py [--sizes 12,14,16] [--trials 5]
"""

import argparse
import random
import time

import numpy as np

from dynsparse import cutkernel
from dynsparse.graph import DynamicGraph


def make_graph(n, avg_deg, rng):
    g = DynamicGraph(n)
    for i in range(1, n):
        g.insert_edge(i, rng.randrange(i))
    while 2 * g.m < n * avg_deg:
        u, v = rng.sample(range(n), 2)
        g.insert_edge(u, v)
    return g


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="12,14,16,18")
    ap.add_argument("--avg-deg", type=int, default=6)
    ap.add_argument("--trials", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    impls = cutkernel.implementations()
    print(f"active implementation: {cutkernel.IMPL}")
    print(f"{'n':>4} {'m':>5}  " +
          "  ".join(f"{name:>12}" for name in sorted(impls)) +
          "   speedup")
    for n in (int(x) for x in args.sizes.split(",")):
        g = make_graph(n, args.avg_deg, rng)
        us, vs, ws = g.edge_arrays()
        us = np.asarray(us, dtype=np.int64)
        vs = np.asarray(vs, dtype=np.int64)
        times = {}
        results = {}
        for name, impl in impls.items():
            t0 = time.perf_counter()
            for _ in range(args.trials):
                results[name] = impl.crossing_counts(n, us, vs)
            times[name] = (time.perf_counter() - t0) / args.trials
        vals = list(results.values())
        assert all(np.array_equal(vals[0], v) for v in vals[1:]), \
            "kernel implementations disagree"
        row = f"{n:>4} {g.m:>5}  " + "  ".join(
            f"{times[name]:>12.6f}" for name in sorted(impls))
        if "compiled" in times and "portable" in times:
            row += f"   {times['portable'] / times['compiled']:>6.1f}x"
        print(row)


if __name__ == "__main__":
    main()
