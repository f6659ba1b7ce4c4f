#!/usr/bin/env python3
"""Benchmark the jit-compiled kernels against the pure-Python fallback.

Runs each workload twice in child processes, once with numba enabled and
once with EDGEBLOCK_NO_NUMBA=1, and prints a timing table.  Both paths
execute the same kernel code and produce bit-identical results (covered by
tests/test_fallback.py); this script only measures the speed gap.

    python benchmarks/bench_kernels.py [--scale small|medium]
"""

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json
import sys
import time

import numpy as np

import edgeblock as eb
from edgeblock._accel import NUMBA_ENABLED
from edgeblock.community import SweepParams, resolution_sweep
from edgeblock.generators import gnm_random_graph, planted_partition, with_random_weights
from edgeblock.seeding import rng_for

scale = sys.argv[1]
if scale == "small":
    n, m, reps, enum_m = 120, 420, 400, 14
else:
    n, m, reps, enum_m = 400, 1800, 2000, 17

g = with_random_weights(gnm_random_graph(n, m, 7), 7)
tiny = with_random_weights(gnm_random_graph(enum_m - 2, enum_m, 3), 3)
seeds = [0, 1]

def timed(fn, warm=True):
    if warm:
        fn()                      # absorb jit compilation
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0

results = {
    "numba": NUMBA_ENABLED,
    "cascade_batch": timed(lambda: eb.estimate_spread(g, seeds, reps, master_seed=1)),
    "bfs_stats": timed(lambda: eb.graph_stats(g)),
    "betweenness": timed(lambda: eb.edge_betweenness(g)),
    "betweenness_w": timed(lambda: eb.edge_betweenness(g, weighted=True)),
    "louvain": timed(lambda: eb.louvain_partition(g, 1.0, rng_for(5, 0))),
    "live_edge_enum": timed(lambda: eb.enumerate_spread_exact(tiny, [0])),
    "girth": timed(lambda: eb.girth(g)),
}
print(json.dumps(results))
"""


def run_child(disable_numba: bool, scale: str) -> dict:
    env = dict(os.environ)
    env["EDGEBLOCK_NO_NUMBA"] = "1" if disable_numba else "0"
    proc = subprocess.run(
        [sys.executable, "-c", WORKER, scale],
        env=env, capture_output=True, text=True,
    )
    if proc.returncode != 0:
        raise RuntimeError(proc.stderr)
    return json.loads(proc.stdout.strip().splitlines()[-1])


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--scale", choices=("small", "medium"), default="small",
                        help="workload size (default: %(default)s)")
    args = parser.parse_args()

    print(f"scale={args.scale}; timing jit path ...")
    jit = run_child(disable_numba=False, scale=args.scale)
    if not jit.pop("numba"):
        print("numba unavailable: only the fallback path can be timed")
        jit = None
    print("timing fallback path ...")
    plain = run_child(disable_numba=True, scale=args.scale)
    plain.pop("numba")

    names = list(plain)
    print(f"\n{'kernel':<16} {'fallback':>12} {'numba':>12} {'speedup':>9}")
    for name in names:
        p = plain[name]
        if jit is None:
            print(f"{name:<16} {p:>11.4f}s {'-':>12} {'-':>9}")
        else:
            j = jit[name]
            print(f"{name:<16} {p:>11.4f}s {j:>11.4f}s {p / j:>8.1f}x")


if __name__ == "__main__":
    main()
