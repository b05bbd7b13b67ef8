"""Relative error of each strategy on Grcar matrices under fixed time budgets.

    python3 scripts/grcar_table.py [--sizes 5 10 20 50] [--scale 1.0] [--json out.json]

Budgets default to 30/60/120/300 s for n = 5/10/20/50; ``--scale 0.1`` runs
a ten times shorter version.
"""
import argparse
import json

from substab.bench import ExperimentSpec, grcar, run_experiment
from substab.fgm import SolverConfig

BUDGETS = {5: 30.0, 10: 60.0, 20: 120.0, 50: 300.0}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=int, nargs="+", default=list(BUDGETS))
    ap.add_argument("--scale", type=float, default=1.0)
    ap.add_argument("--strategies", nargs="+", default=["standard", "lmi", "multistart"])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json")
    args = ap.parse_args()

    rows = []
    print(f"{'n':>4} " + " ".join(f"{s:>18}" for s in args.strategies))
    for n in args.sizes:
        A = grcar(n)
        budget = BUDGETS.get(n, 60.0) * args.scale
        cfg = SolverConfig(max_iterations=10 ** 9, time_limit=budget, rng_seed=args.seed)
        rep = run_experiment(ExperimentSpec(A, args.strategies, cfg, source=f"grcar({n})",
                                            include_trace=False))
        cells = [f"{r.relative_error_percent:7.2f}% ({r.iterations:>6})" if r.ok else "failed"
                 for r in rep.results]
        print(f"{n:>4} " + " ".join(f"{c:>18}" for c in cells), flush=True)
        rows.append({"n": n, "budget": budget, "results": [
            {"strategy": r.strategy, "relative_error_percent": r.relative_error_percent,
             "iterations": r.iterations, "ok": r.ok} for r in rep.results]})
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=1)


if __name__ == "__main__":
    main()
