"""``stabilize``: compute a nearby Schur-stable matrix from the command line.

Exit codes: 0 success, 1 argument error, 2 numerical failure, 3 I/O error.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys

import numpy as np

from .bench.experiment import ExperimentSpec, run_experiment
from .bench.io import FORMATS, read_matrix, write_matrix
from .bench.matrices import FIXTURE_NAMES, fixture, generate
from .fgm import SolverConfig
from .initializers import STRATEGIES

EXIT_OK, EXIT_ARGS, EXIT_NUMERICAL, EXIT_IO = 0, 1, 2, 3
ALL_STRATEGIES = ["standard", "lmi", "multistart"]


class ArgumentError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ARGS, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(
        prog="stabilize",
        description="Find a nearby Schur-stable matrix X minimizing ||A - X||_F.",
    )
    src = p.add_argument_group("input (exactly one)")
    src.add_argument("input", nargs="?", help="matrix file (.csv or .mtx)")
    src.add_argument("--format", choices=FORMATS, help="input format (default: from extension)")
    src.add_argument("--generator", choices=["grcar", "ones"])
    src.add_argument("--n", type=int, help="generator size")
    src.add_argument("--order", type=int, default=3, help="Grcar order k (default 3)")
    src.add_argument("--alpha", type=float, help="entry value for --generator ones (default 2/n)")
    src.add_argument("--fixture", choices=FIXTURE_NAMES)

    sol = p.add_argument_group("solver")
    sol.add_argument("--init", default="all", choices=[*STRATEGIES, "all"],
                     help="initialization; 'all' runs standard, lmi and multistart")
    sol.add_argument("--seed", type=int, help="RNG seed (default $STABILIZE_SEED or 0)")
    sol.add_argument("--starts", type=int, default=100, help="random starts for multistart")
    sol.add_argument("--time-limit", type=float, help="seconds per strategy")
    sol.add_argument("--max-iter", type=int, default=10_000)
    sol.add_argument("--tol", type=float, default=1e-12,
                     help="relative objective decrease over 100 iterations to stop at")
    sol.add_argument("--target-radius", type=float, default=1.0,
                     help="bound on the spectral radius of X, in (0, 1]")

    out = p.add_argument_group("output")
    out.add_argument("--out", help="JSON report path")
    out.add_argument("--save-matrix", help="write the best X here (format from extension)")
    out.add_argument("--save-triple", metavar="PREFIX",
                     help="write PREFIX_S.csv, PREFIX_U.csv, PREFIX_B.csv")
    out.add_argument("--trace", action="store_true", help="include per-iteration data in the report")
    out.add_argument("-q", "--quiet", action="store_true")
    out.add_argument("-v", "--verbose", action="store_true")
    return p


def load_input(args) -> tuple[np.ndarray, str]:
    given = [args.input is not None, args.generator is not None, args.fixture is not None]
    if sum(given) != 1:
        raise ArgumentError("give exactly one of: input path, --generator, --fixture")
    if args.fixture:
        return fixture(args.fixture), f"fixture:{args.fixture}"
    if args.generator:
        if args.n is None:
            raise ArgumentError("--generator needs --n")
        try:
            A = generate(args.generator, args.n, args.order, args.alpha)
        except ValueError as exc:
            raise ArgumentError(str(exc)) from exc
        tag = f"{args.generator}(n={args.n}" + (
            f", k={args.order})" if args.generator == "grcar" else ")")
        return A, tag
    A = read_matrix(args.input, args.format)
    return A, args.input


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("STABILIZE_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError as exc:
        raise ArgumentError(f"STABILIZE_SEED must be an integer, got {env!r}") from exc


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        try:
            A, source = load_input(args)
        except (OSError, ValueError) as exc:
            if isinstance(exc, OSError) or args.input is not None:
                print(f"stabilize: cannot read {args.input}: {exc}", file=sys.stderr)
                return EXIT_IO
            raise ArgumentError(str(exc)) from exc
        if A.ndim != 2 or A.shape[0] != A.shape[1] or A.size == 0:
            raise ArgumentError(f"input must be a non-empty square matrix, got {A.shape}")
        if not np.all(np.isfinite(A)):
            raise ArgumentError("input has non-finite entries")
        try:
            config = SolverConfig(
                max_iterations=args.max_iter,
                time_limit=args.time_limit,
                rel_tolerance=args.tol,
                target_radius=args.target_radius,
                rng_seed=_seed(args),
            )
            strategies = ALL_STRATEGIES if args.init == "all" else [args.init]
            spec = ExperimentSpec(A, strategies, config, source=source,
                                  starts=args.starts, include_trace=args.trace)
        except ValueError as exc:
            raise ArgumentError(str(exc)) from exc
    except ArgumentError as exc:
        print(f"stabilize: error: {exc}", file=sys.stderr)
        return EXIT_ARGS

    report = run_experiment(spec)
    if not args.quiet:
        print(report.summary())

    ok = [r for r in report.results if r.ok]
    try:
        if args.out:
            report.save(args.out)
        if ok and (args.save_matrix or args.save_triple):
            best = min(ok, key=lambda r: r.objective)
            if args.save_matrix:
                write_matrix(args.save_matrix, best.X)
            if args.save_triple:
                for name in "SUB":
                    write_matrix(f"{args.save_triple}_{name}.csv", getattr(best, name))
    except (OSError, ValueError) as exc:
        print(f"stabilize: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_NUMERICAL if report.failed else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
