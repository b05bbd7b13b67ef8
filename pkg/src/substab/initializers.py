"""Starting points for the FGM solver and the random multi-start heuristic."""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Literal

import numpy as np

from .fgm import SolverConfig, SolverReport, fgm_solve
from .linalg import as_square, solve_discrete_lyapunov, spectral_radius, sym_sqrt
from .subform import SubTriple, joint_polar_factor, similarity_polar

RNG_ALGORITHM = "numpy.random.PCG64"

# Relative inflation of the LMI scaling factor for unstable inputs, so that the
# scaled matrix is strictly inside the unit disc.
LMI_INFLATION = 1e-9

StrategyKind = Literal["standard", "lmi", "random", "multistart"]
STRATEGIES: tuple[str, ...] = ("standard", "lmi", "random", "multistart")


@dataclass(frozen=True)
class InitStrategy:
    kind: StrategyKind = "standard"
    seed: int = 0
    count: int = 100
    budget: float | None = None

    def __post_init__(self):
        if self.kind not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.kind!r}; choose from {STRATEGIES}")
        if self.count < 1:
            raise ValueError("count must be at least 1")


def init_standard(A, target_radius: float = 1.0) -> SubTriple:
    """``S = I`` with the optimal ``(U, B)`` from the polar decomposition of ``A``.

    The initial squared error is the sum of ``(sigma_i - r)^2`` over the
    singular values of ``A`` exceeding ``r = target_radius``.
    """
    A = as_square(A, "A")
    U, B = joint_polar_factor(A, target_radius)
    return SubTriple(np.eye(A.shape[0]), U, B, target_radius)


def lmi_scale(A, target_radius: float = 1.0) -> float:
    """Scaling ``mu_eff`` such that ``A / mu_eff`` is strictly ``target_radius``-stable."""
    rho = spectral_radius(A) / target_radius
    if rho < 1.0:
        return 1.0
    return rho * (1.0 + LMI_INFLATION)


def init_lmi(A, target_radius: float = 1.0) -> SubTriple:
    """Exact SUB triple of the rescaled matrix ``A / mu_eff``.

    Solves ``A'^T P A' - P + I = 0`` for ``A' = A / (mu_eff r)``, sets
    ``S = P^{1/2}`` and takes ``(U, B)`` from the polar decomposition of
    ``S (A / mu_eff) S^{-1}``. The triple assembles to ``A / mu_eff``, so the
    initial error is ``||A||_F^2 (1 - 1/mu_eff)^2``.
    """
    A = as_square(A, "A")
    n = A.shape[0]
    mu = lmi_scale(A, target_radius)
    Ascaled = A / mu
    P = solve_discrete_lyapunov(Ascaled / target_radius, np.eye(n))
    S = sym_sqrt(P)
    U, B = similarity_polar(Ascaled, S, target_radius)
    return SubTriple(S, U, B, target_radius)


def init_from_scaling(A, S, target_radius: float = 1.0) -> SubTriple:
    """Triple with the given ``S`` and ``(U, B)`` fitted to ``S A S^{-1}``."""
    A = as_square(A, "A")
    S = as_square(S, "S")
    U, B = similarity_polar(A, S, target_radius)
    return SubTriple(0.5 * (S + S.T), U, B, target_radius)


def random_scaling(n: int, rng: np.random.Generator) -> np.ndarray:
    G = rng.standard_normal((n, n))
    return G @ G.T + np.eye(n)


def init_random(A, seed: int | np.random.Generator = 0,
                target_radius: float = 1.0) -> SubTriple:
    """``S = G G^T + I`` with standard normal ``G``, then the fitted ``(U, B)``."""
    A = as_square(A, "A")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.Generator(
        np.random.PCG64(seed))
    return init_from_scaling(A, random_scaling(A.shape[0], rng), target_radius)


def make_init(A, kind: str, config: SolverConfig) -> SubTriple:
    """Dispatch on a single-start strategy name."""
    r = config.target_radius
    if kind == "standard":
        return init_standard(A, r)
    if kind == "lmi":
        return init_lmi(A, r)
    if kind == "random":
        return init_random(A, config.rng_seed, r)
    raise ValueError(f"{kind!r} is not a single-start strategy")


def _candidate_seeds(seed: int, count: int) -> list[np.random.SeedSequence]:
    return np.random.SeedSequence(seed).spawn(count)


def multistart(A, config: SolverConfig = SolverConfig(), count: int = 100) -> SolverReport:
    """Random multi-start: many short runs, then refine the best one.

    With a time limit ``T``, each of the ``count`` random starts gets
    ``T / (2 count)`` seconds and the best result is refined for ``T / 2``.
    Without a time limit the same split is applied to ``max_iterations``.
    Candidate seeds are spawned from ``config.rng_seed``; ties go to the
    lowest candidate index.
    """
    A = as_square(A, "A")
    if count < 1:
        raise ValueError("count must be at least 1")
    if config.time_limit is not None:
        short = replace(config, time_limit=config.time_limit / (2 * count))
        long = replace(config, time_limit=config.time_limit / 2)
    else:
        short = replace(config, max_iterations=max(1, config.max_iterations // (2 * count)))
        long = replace(config, max_iterations=max(1, config.max_iterations // 2))

    best: SolverReport | None = None
    for ss in _candidate_seeds(config.rng_seed, count):
        rng = np.random.Generator(np.random.PCG64(ss))
        rep = fgm_solve(A, init_random(A, rng, config.target_radius), short)
        if best is None or rep.objective < best.objective:
            best = rep
    assert best is not None
    final = fgm_solve(A, best.best_triple, long)
    final.initial_objective = best.initial_objective
    return final


def run_strategy(A, kind: str, config: SolverConfig, count: int = 100) -> SolverReport:
    if kind == "multistart":
        return multistart(A, config, count)
    return fgm_solve(A, make_init(A, kind, config), config)


def standard_error_bound(A, target_radius: float = 1.0) -> float:
    s = np.linalg.svd(as_square(A), compute_uv=False)
    excess = s[s > target_radius] - target_radius
    return float(np.sum(excess ** 2))


def lmi_error_bound(A, target_radius: float = 1.0) -> float:
    mu = lmi_scale(A, target_radius)
    return float(np.linalg.norm(A) ** 2 * (1.0 - 1.0 / mu) ** 2)
