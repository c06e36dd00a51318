"""Timing comparison of the two row-reduction backends.

Row reduction mod p is the hot loop of the package: interpolation matrices
for fat point schemes reach thousands of rows. This script times the numba
kernel against the pure-numpy fallback on identical random matrices and
checks that ranks and pivot columns agree before reporting anything.

    python3 benchmarks/bench_elimination.py --sizes 200,400,800,1600
"""

import argparse
import sys
import time

import numpy as np

from fatpt import _kernels


def time_backend(a: np.ndarray, p: int, backend: str, repeats: int) -> tuple[float, int, np.ndarray]:
    best = None
    rank = pivots = None
    for _ in range(repeats):
        work = a.copy()
        t0 = time.perf_counter()
        rank, pivots = _kernels.rref_using(work, p, backend)
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, rank, pivots


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="200,400,800,1600",
                        help="comma-separated row counts (columns are rows * 5 / 4)")
    parser.add_argument("--prime", type=int, default=31991)
    parser.add_argument("--repeats", type=int, default=3, help="best-of timing")
    parser.add_argument("--seed", type=int, default=20260814)
    args = parser.parse_args()

    sizes = [int(s) for s in args.sizes.split(",") if s]
    backends = ["numpy"]
    if _kernels.HAS_NUMBA:
        backends.insert(0, "numba")
        # compile outside the timed region
        _kernels.rref_using(np.eye(4, dtype=np.int64), args.prime, "numba")
    else:
        print("numba not importable; timing the numpy backend only", file=sys.stderr)

    rng = np.random.default_rng(args.seed)
    header = f"{'rows':>6} {'cols':>6}" + "".join(f" {b + ' [s]':>12}" for b in backends)
    if len(backends) == 2:
        header += f" {'speedup':>9}"
    print(header)
    for n in sizes:
        cols = n * 5 // 4
        a = rng.integers(0, args.prime, size=(n, cols), dtype=np.int64)
        times = {}
        results = {}
        for backend in backends:
            times[backend], rank, pivots = time_backend(a, args.prime, backend, args.repeats)
            results[backend] = (rank, pivots)
        if len(backends) == 2:
            r_nb, p_nb = results["numba"]
            r_np, p_np = results["numpy"]
            if r_nb != r_np or not np.array_equal(p_nb, p_np):
                print(f"backend disagreement at n={n}: rank {r_nb} vs {r_np}", file=sys.stderr)
                return 1
        line = f"{n:>6} {cols:>6}" + "".join(f" {times[b]:>12.4f}" for b in backends)
        if len(backends) == 2:
            line += f" {times['numpy'] / times['numba']:>8.1f}x"
        print(line)
    return 0


if __name__ == "__main__":
    sys.exit(main())
