"""Compare the compiled and pure-Python integer kernels.

    python3 benchmarks/bench_kernels.py [--repeat N] [--size N]

Times the three kernels on random small-entry integer matrices, then one
end-to-end workload (the B2 battery complexes), under each backend.
"""

import argparse
import random
import time

from heckext import kernels
from heckext.battery import Workspace, battery_datum, battery_modules


def rand_matrix(rng, m, n, bound=9):
    return [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(m)]


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def kernel_cases(size, seed=0):
    rng = random.Random(seed)
    a, b = rand_matrix(rng, size, size), rand_matrix(rng, size, size)
    # rank-deficient tall matrix for the echelon form
    base = rand_matrix(rng, size // 2, 2 * size, 3)
    rows = [[sum(rng.randint(-2, 2) * r[j] for r in base) for j in range(2 * size)]
            for _ in range(size)]
    d = rand_matrix(rng, size // 2, size // 2, 5)
    return {
        "int_matmul": lambda: kernels.int_matmul(a, b, size, size, size),
        "int_rref": lambda: kernels.int_rref(rows, 2 * size),
        "int_det": lambda: kernels.int_det(d, size // 2),
    }


def battery_workload():
    d = battery_datum("B2", 1)
    mods = battery_modules(d, (3, 5), composites=False)
    ws = Workspace()
    for X in mods:
        for Y in mods:
            ws.pair_report(X, Y)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--size", type=int, default=40)
    args = ap.parse_args()

    backends = kernels.available_backends()
    print(f"backends: {', '.join(backends)}")
    results = {}
    for be in backends:
        with kernels.use_backend(be):
            cases = kernel_cases(args.size)
            for name, fn in cases.items():
                results[(name, be)] = best_of(fn, args.repeat)
            results[("B2 battery", be)] = best_of(battery_workload, 1)
    names = list(dict.fromkeys(k[0] for k in results))
    print(f"{'case':<14}" + "".join(f"{be:>12}" for be in backends) + "     ratio")
    for name in names:
        ts = [results[(name, be)] for be in backends]
        ratio = ts[backends.index("python")] / ts[0] if len(ts) > 1 else 1.0
        print(f"{name:<14}" + "".join(f"{t * 1e3:>10.2f}ms" for t in ts) + f"  {ratio:>8.1f}x")


if __name__ == "__main__":
    main()
