"""Compare the compiled kernels with the numpy/pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--n 3 4] [--repeat 3]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from torushfl import kernels
from torushfl.f2_homology import build_buckets, tilde_homology
from torushfl.grid_core import torus_grid


def best_of(repeat: int, fn, *args, **kw) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args, **kw)
        best = min(best, time.perf_counter() - t0)
    return best


def bench(n: int, backend, repeat: int) -> dict:
    g = torus_grid(n)
    free = kernels.marking_free_table(g)
    big = max(build_buckets(g, backend=backend), key=len)
    perms = backend.unrank(big.ranks, g.size)
    src, tgt = backend.boundary_targets(perms, free)
    # a square sparse matrix with the same density as the largest bucket
    rng = np.random.default_rng(0)
    ncols = len(big)
    nnz = max(len(src), ncols)
    cols = np.sort(rng.integers(0, ncols, nnz))
    rows = rng.integers(0, ncols, nnz).astype(np.int32)
    indptr = np.zeros(ncols + 1, dtype=np.int64)
    np.cumsum(np.bincount(cols, minlength=ncols), out=indptr[1:])
    return {
        "grade_all": best_of(repeat, kernels.grade_all, g, backend),
        "boundary": best_of(repeat, backend.boundary_targets, perms, free),
        "gf2_rank": best_of(repeat, backend.gf2_rank, indptr, rows, ncols),
        "tilde": best_of(repeat, tilde_homology, g, backend=backend),
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=[3, 4])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = {"python": kernels.get_backend("python")}
    try:
        backends["compiled"] = kernels.get_backend("compiled")
    except ImportError:
        print("compiled extension not built; timing the fallback only")

    print(f"{'n':>2} {'kernel':<10} " + " ".join(f"{b:>10}" for b in backends) + ("    speedup" if len(backends) == 2 else ""))
    for n in args.n:
        res = {name: bench(n, b, args.repeat) for name, b in backends.items()}
        for k in res["python"]:
            times = [res[b][k] for b in backends]
            line = f"{n:>2} {k:<10} " + " ".join(f"{t:>9.4f}s" for t in times)
            if len(times) == 2:
                line += f" {times[0] / times[1]:>9.1f}x"
            print(line)


if __name__ == "__main__":
    main()
