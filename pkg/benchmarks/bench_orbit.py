"""Compare the compiled and pure-Python LC-orbit kernels.

    python benchmarks/bench_orbit.py [--n 12] [--graphs 5] [--seed 0]
"""

import argparse
import random
import time

from vminor import _kernels
from vminor.generators import random_graph


def run(rows, backend):
    t0 = time.perf_counter()
    status, size, *_ = _kernels.bfs(rows, 10**8, backend=backend)
    return size, time.perf_counter() - t0


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=12)
    ap.add_argument("--graphs", type=int, default=5)
    ap.add_argument("--p", type=float, default=0.4)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if not _kernels.HAVE_COMPILED:
        print("compiled kernel not built; only the Python kernel is available")
    rng = random.Random(args.seed)
    print(f"{'orbit':>9} {'python s':>10} {'compiled s':>11} {'speedup':>8}")
    for _ in range(args.graphs):
        g = random_graph(args.n, args.p, rng)
        size, tp = run(g.rows, "python")
        if _kernels.HAVE_COMPILED:
            size_c, tc = run(g.rows, "cython")
            assert size_c == size
            print(f"{size:>9} {tp:>10.3f} {tc:>11.3f} {tp / tc:>7.1f}x")
        else:
            print(f"{size:>9} {tp:>10.3f} {'-':>11} {'-':>8}")


if __name__ == "__main__":
    main()
