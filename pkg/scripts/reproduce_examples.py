"""Solve the small fixed examples with every strategy and print a comparison.

    python3 scripts/reproduce_examples.py [--budget SECONDS] [--seed INT]
"""
import argparse

import numpy as np

from substab.bench import ExperimentSpec, fixture, run_experiment, scaled_ones
from substab.fgm import SolverConfig

CASES = {
    "gp2018-ex2": lambda: fixture("gp2018-ex2"),
    "gp2018-sec44": lambda: fixture("gp2018-sec44"),
    "ones n=10 alpha=0.2": lambda: scaled_ones(10, 0.2),
    "ones n=2 alpha=2": lambda: scaled_ones(2, 2.0),
    "ones n=2 alpha=3": lambda: scaled_ones(2, 3.0),
    "ones n=3 alpha=2": lambda: scaled_ones(3, 2.0),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--budget", type=float, default=10.0, help="seconds per strategy")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--starts", type=int, default=100)
    args = ap.parse_args()

    cfg = SolverConfig(max_iterations=10 ** 9, time_limit=args.budget, rng_seed=args.seed)
    for name, make in CASES.items():
        spec = ExperimentSpec(make(), ["standard", "lmi", "multistart"], cfg,
                              source=name, starts=args.starts, include_trace=False)
        rep = run_experiment(spec)
        print(rep.summary())
        if name == "gp2018-ex2":
            ref = fixture("gp2018-ex2-solution")
            for r in rep.results:
                if r.ok:
                    print(f"    {r.strategy}: ||X - X_printed||_F = "
                          f"{np.linalg.norm(r.matrix() - ref):.2e}")
        print()


if __name__ == "__main__":
    main()
