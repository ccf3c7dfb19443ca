"""How often does sign-iteration ascent reach the enumerated optimum?"""
import argparse
import time

import numpy as np

from tcarank.tca import RestartPolicy, ResidualMatrix, first_axis_ascent, first_axis_enumerate


def random_residual(rng, n, d):
    M = rng.integers(-9, 10, size=(n + 1, d))
    M -= M.sum(axis=1, keepdims=True) // d
    M[:, -1] -= M.sum(axis=1)
    M[-1] -= M.sum(axis=0)
    return ResidualMatrix(M.astype(np.int64), 2 * n * d * (d - 1), 1, n, d)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--n", type=int, default=30)
    ap.add_argument("--d", type=int, default=8)
    ap.add_argument("--rows", type=int, default=64, help="random row restarts")
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    rng = np.random.default_rng(a.seed)
    policy = RestartPolicy(n_rows=a.rows, seed=a.seed)
    hit, gap, te, ta = 0, [], 0.0, 0.0
    for _ in range(a.trials):
        rm = random_residual(rng, a.n, a.d)
        t0 = time.perf_counter()
        e = first_axis_enumerate(rm)
        t1 = time.perf_counter()
        s = first_axis_ascent(rm, policy)
        t2 = time.perf_counter()
        te += t1 - t0
        ta += t2 - t1
        hit += s.delta == e.delta
        gap.append(float(e.delta - s.delta) / float(e.delta) if e.delta else 0.0)
    print(f"optimum reached {hit}/{a.trials}; worst relative gap {max(gap):.3%}")
    print(f"time enumerate {te:.2f}s, ascent {ta:.2f}s")


if __name__ == "__main__":
    main()
