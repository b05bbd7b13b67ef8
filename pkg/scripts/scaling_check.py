"""Median wall time per solver iteration as n doubles.

    python3 scripts/scaling_check.py [--sizes 50 100 200 400] [--iters 50]
"""
import argparse

import numpy as np

from substab.fgm import SolverConfig, fgm_solve
from substab.initializers import init_standard


def per_iteration(n, iters, rng):
    A = 1.5 * rng.standard_normal((n, n)) / np.sqrt(n)
    rep = fgm_solve(A, init_standard(A), SolverConfig(max_iterations=iters, rel_tolerance=0))
    return float(np.median(np.diff(rep.trace.elapsed)))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=int, nargs="+", default=[50, 100, 200, 400])
    ap.add_argument("--iters", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    per_iteration(32, 10, rng)
    prev = None
    for n in args.sizes:
        t = per_iteration(n, args.iters, rng)
        ratio = f"  x{t / prev:.2f}" if prev else ""
        print(f"n = {n:>5}: {t * 1e3:9.2f} ms/iter{ratio}", flush=True)
        prev = t


if __name__ == "__main__":
    main()
