"""Compare the numba kernels with the pure numpy fallback.

Each backend runs in its own interpreter because the choice is made at import
time from CM_RAMSEY_DISABLE_JIT.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import json
import os
import subprocess
import sys
import time

WORKLOADS = {
    "search n=4 (2,2,2)": "search_avoiding(4, (2, 2, 2))",
    "search n=5 (2,2,3)": "search_avoiding(5, (2, 2, 3))",
    "search n=6 (3,4)": "search_avoiding(6, (3, 4))",
    "search n=6 (2,3,3)": "search_avoiding(6, (2, 3, 3))",
    "profiles block+strip": "[connected_matching_sizes(m) for m in MATRICES]",
}

SETUP = """
from cmramsey import build_block, build_strip, search_avoiding
from cmramsey.matching import connected_matching_sizes
MATRICES = [build_block(3, 4, 5, 0), build_block(5, 7, 9, 2), build_strip((4, 6, 8)),
            build_block(7, 9, 12, 3)] * 10
"""


def child(repeat):
    from cmramsey import backend

    ns = {}
    exec(SETUP, ns)
    for expr in WORKLOADS.values():
        eval(expr, ns)  # compile / warm caches
    timings = {}
    for name, expr in WORKLOADS.items():
        best = float("inf")
        for _ in range(repeat):
            start = time.perf_counter()
            eval(expr, ns)
            best = min(best, time.perf_counter() - start)
        timings[name] = best
    print(json.dumps({"backend": backend(), "timings": timings}))


def run_backend(disable_jit, repeat):
    env = dict(os.environ)
    env.pop("CM_RAMSEY_DISABLE_JIT", None)
    if disable_jit:
        env["CM_RAMSEY_DISABLE_JIT"] = "1"
    proc = subprocess.run(
        [sys.executable, __file__, "--child", "--repeat", str(repeat)],
        env=env, capture_output=True, text=True, check=True,
    )
    return json.loads(proc.stdout)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--child", action="store_true", help=argparse.SUPPRESS)
    args = parser.parse_args()
    if args.child:
        child(args.repeat)
        return
    fast = run_backend(False, args.repeat)
    slow = run_backend(True, args.repeat)
    print(f"{'workload':<24} {fast['backend']:>10} {slow['backend']:>10} {'speedup':>8}")
    for name in WORKLOADS:
        a, b = fast["timings"][name], slow["timings"][name]
        print(f"{name:<24} {a:>9.4f}s {b:>9.4f}s {b / a:>7.1f}x")


if __name__ == "__main__":
    main()
