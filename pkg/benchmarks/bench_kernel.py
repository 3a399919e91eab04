"""Compiled versus pure-Python search kernel on representative workloads.

    python3 benchmarks/bench_kernel.py [--repeat 3]
"""

import argparse
import time

from bzquilt import lattice
from bzquilt.bzdiagram import triangle_cone
from bzquilt.quilt import build_quilt, fiber_count
from bzquilt.tree import caterpillar, parse_tree

WORKLOADS = {
    "hilbert Q(sl_4) triangle, bound 4": lambda: lattice.hilbert_basis(triangle_cone(4), 4),
    "hilbert quilt n=5 caterpillar": lambda: lattice.hilbert_basis(build_quilt(caterpillar(5), 3).cone, 5),
    "fiber (w1+w2)^6 on a 6-leaf tree": lambda: fiber_count(parse_tree("((1,2),(3,4),(5,6))"), [(1, 1)] * 6),
    "fiber sl_4 (2,1,0)^4": lambda: fiber_count(caterpillar(4), [(2, 1, 0), (0, 1, 2), (2, 1, 0), (0, 1, 2)]),
}


def timeit(fn, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = lattice.available_backends()
    print(f"backends: {', '.join(backends)}")
    if "compiled" not in backends:
        print("compiled kernel not built; only the python timings are shown")
    print(f"{'workload':40s} " + " ".join(f"{b:>10s}" for b in backends) + "   speedup")
    for name, fn in WORKLOADS.items():
        times, results = {}, {}
        for b in backends:
            lattice.set_backend(b)
            # warm caches that do not touch the kernel (LP bounds, diagrams)
            fn()
            times[b], res = timeit(fn, args.repeat)
            results[b] = res if isinstance(res, int) else list(res)
        if len(set(map(repr, results.values()))) != 1:
            raise SystemExit(f"backends disagree on {name}")
        speed = times["python"] / times["compiled"] if "compiled" in times else float("nan")
        print(f"{name:40s} " + " ".join(f"{times[b]:10.4f}" for b in backends) + f"   {speed:6.1f}x")
    lattice.set_backend("compiled" if "compiled" in backends else "python")


if __name__ == "__main__":
    main()
