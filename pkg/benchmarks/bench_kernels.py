"""Compare the compiled kernels with the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Prints one line per (kernel, size) with the best-of-N time of each backend
and the speedup.
"""

import argparse
import timeit

import numpy as np

from pairbound import _backend, _pure, sample_haar
from pairbound.stiefel import squares_of

try:
    from pairbound import _kernels
except ImportError:  # extension not built
    _kernels = None


def cases():
    for n in (16, 32, 64):
        G = np.random.default_rng(n).standard_normal((n, n))
        S = G + G.T
        yield "jacobi_eigh", n, lambda m, S=S: m.jacobi_eigh(S, False, 1e-13, 100)
    for n in (64, 256, 1024):
        rows = np.ascontiguousarray(sample_haar(n, 0).rows)
        w = np.ascontiguousarray(squares_of(rows))
        z = np.hypot(w[:, 0], w[:, 1]) - 2.0 / n
        tie = _backend.TIE_TOL
        yield "best_pair_sigma2sq", n, lambda m, r=rows: m.best_pair_sigma2sq(r, tie)
        yield "min_pair_condition", n, lambda m, w=w, z=z, n=n: m.min_pair_condition(w, z, 2.0 / n**2, tie)
        yield "max_polygon_defect", n, lambda m, w=w: m.max_polygon_defect(w, tie)


def best_time(fn, repeat):
    number = 1
    while timeit.timeit(fn, number=number) < 0.05:
        number *= 2
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _kernels is None:
        print("compiled kernels not available; build with `pip install -e . --no-build-isolation`")
        return 1
    print(f"{'kernel':<20} {'n':>5} {'python [s]':>12} {'cython [s]':>12} {'speedup':>8}")
    for name, n, call in cases():
        tp = best_time(lambda: call(_pure), args.repeat)
        tc = best_time(lambda: call(_kernels), args.repeat)
        print(f"{name:<20} {n:>5} {tp:>12.3e} {tc:>12.3e} {tp / tc:>7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
