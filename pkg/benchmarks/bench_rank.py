"""Compare the numba and numpy modular-rank kernels with the exact sparse rank.

    python benchmarks/bench_rank.py --max-n 8 --repeat 3
"""

import argparse
import time

import numpy as np

from novikov import _accel
from novikov.diffreal import basis_matrix
from novikov.linalg import rank_exact


def best_of(fn, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return result, best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--min-n", type=int, default=5)
    parser.add_argument("--max-n", type=int, default=8)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    if _accel.HAVE_NUMBA:
        _accel.rank_mod_p_numba(np.eye(2, dtype=np.int64))  # compile outside the timings

    print(f"{'n':>2} {'size':>6} {'exact':>10} {'numpy':>10} {'numba':>10}  rank")
    for n in range(args.min_n, args.max_n + 1):
        m = basis_matrix(n)
        dense = np.zeros(m.shape, dtype=np.int64)
        for i, row in enumerate(m.rows):
            for j, v in row.items():
                dense[i, j] = v % _accel.DEFAULT_PRIME
        r_exact, t_exact = best_of(lambda: rank_exact(m), args.repeat)
        r_np, t_np = best_of(lambda: _accel.rank_mod_p_numpy(dense), args.repeat)
        if _accel.HAVE_NUMBA:
            r_nb, t_nb = best_of(lambda: _accel.rank_mod_p_numba(dense), args.repeat)
            nb = f"{t_nb:10.4f}"
        else:
            r_nb, nb = r_np, f"{'n/a':>10}"
        assert r_exact == r_np == r_nb
        print(f"{n:>2} {m.shape[0]:>6} {t_exact:10.4f} {t_np:10.4f} {nb}  {r_exact}")


if __name__ == "__main__":
    main()
