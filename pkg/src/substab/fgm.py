"""Fast projected gradient method with restart over SUB triples.

The iteration keeps two sequences: the accepted iterates ``X`` (always
feasible, objective non-increasing) and the extrapolated points ``X'`` where
gradients are taken. Each iteration projects a gradient step from ``X'``,
backtracks the step length by 2/3 until the objective does not increase
(decreases below the rounding error of the evaluation do not count),
and either extrapolates with Nesterov momentum or, when backtracking hits
the step-length floor, restarts plain gradient descent from ``X``. The step
length is doubled at the end of every iteration.
"""
from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import IllConditionedError, InfeasibleError, NumericalError
from .linalg import as_square, spd_condition, spectral_radius
from .subform import (
    SINGULAR_CONDITION,
    SubTriple,
    _gradient,
    _objective,
    assemble,
    gradient,
    project_orthogonal,
    project_psd_contraction,
    project_triple,
    spd_floor_with_inverse,
)

log = logging.getLogger(__name__)

TERMINATION_REASONS = ("time", "iterations", "tolerance")
_EPS = float(np.finfo(float).eps)


@dataclass(frozen=True)
class SolverConfig:
    """Parameters of :func:`fgm_solve`.

    ``rel_tolerance`` stops the run once the objective improved by less than
    that fraction over the last ``tolerance_window`` iterations. Set
    ``time_limit`` to ``None`` for runs that depend only on iteration counts
    (and are therefore reproducible bit for bit).
    """

    alpha1: float = 0.5
    step_lower_bound_factor: float = 1e-12
    max_iterations: int = 10_000
    time_limit: float | None = None
    rel_tolerance: float = 1e-12
    tolerance_window: int = 100
    target_radius: float = 1.0
    rng_seed: int = 0

    def __post_init__(self):
        if not (0 < self.alpha1 < 1):
            raise ValueError(f"alpha1 must lie in (0, 1), got {self.alpha1}")
        if not self.step_lower_bound_factor > 0:
            raise ValueError("step_lower_bound_factor must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")
        if self.time_limit is not None and not self.time_limit > 0:
            raise ValueError("time_limit must be positive")
        if self.rel_tolerance < 0 or self.tolerance_window < 1:
            raise ValueError("rel_tolerance must be >= 0 and tolerance_window >= 1")
        if not (0 < self.target_radius <= 1):
            raise ValueError(f"target_radius must lie in (0, 1], got {self.target_radius}")


@dataclass
class SolverTrace:
    iterations: list[int] = field(default_factory=list)
    objectives: list[float] = field(default_factory=list)
    steps: list[float] = field(default_factory=list)
    restarts: list[bool] = field(default_factory=list)
    elapsed: list[float] = field(default_factory=list)

    def append(self, k: int, f: float, gamma: float, restart: bool, t: float) -> None:
        self.iterations.append(k)
        self.objectives.append(f)
        self.steps.append(gamma)
        self.restarts.append(restart)
        self.elapsed.append(t)

    def __len__(self) -> int:
        return len(self.iterations)

    @property
    def n_restarts(self) -> int:
        return sum(self.restarts)

    def is_monotone(self, slack: float = 0.0) -> bool:
        f = np.asarray(self.objectives)
        return bool(np.all(np.diff(f) <= slack))

    def rows(self) -> list[list[float]]:
        """``[iteration, objective, step, elapsed]`` rows."""
        return [
            [k, f, g, t]
            for k, f, g, t in zip(self.iterations, self.objectives, self.steps, self.elapsed)
        ]


@dataclass
class SolverReport:
    best_triple: SubTriple
    best_matrix: np.ndarray
    objective: float
    relative_error_percent: float
    trace: SolverTrace
    termination_reason: str
    initial_objective: float = math.nan

    @property
    def n_iterations(self) -> int:
        return len(self.trace)

    @property
    def spectral_radius(self) -> float:
        return spectral_radius(self.best_matrix)


def relative_error_percent(A: np.ndarray, X: np.ndarray) -> float:
    nA = np.linalg.norm(A)
    return float(100.0 * np.linalg.norm(A - X) / nA) if nA > 0 else 0.0


def momentum_update(alpha: float) -> tuple[float, float]:
    """Next momentum parameter and the extrapolation weight.

    Returns ``(alpha_next, beta)`` with
    ``alpha_next = (sqrt(alpha^4 + 4 alpha^2) - alpha^2) / 2`` and
    ``beta = alpha (1 - alpha) / (alpha^2 + alpha_next)``.
    """
    a2 = alpha * alpha
    alpha_next = 0.5 * (math.sqrt(a2 * a2 + 4.0 * a2) - a2)
    beta = alpha * (1.0 - alpha) / (a2 + alpha_next)
    return alpha_next, beta


def fgm_step(A, current: SubTriple, extrapolated: SubTriple, gamma: float,
             grad=None) -> SubTriple:
    """Projected gradient step ``P(X' - gamma * grad f(X'))``.

    ``current`` only supplies the target radius; it is kept in the signature
    so callers can pass the pair the iteration is working with. A
    precomputed gradient at ``extrapolated`` may be passed as ``grad``.

    Raises :class:`IllConditionedError` when the S block of the extrapolated
    point is numerically singular, which the driver turns into a restart.
    """
    if gamma < 0:
        raise ValueError(f"step length must be non-negative, got {gamma}")
    if grad is None:
        grad = gradient(A, extrapolated)
    return project_triple(
        extrapolated.S - gamma * grad.gS,
        extrapolated.U - gamma * grad.gU,
        extrapolated.B - gamma * grad.gB,
        current.target_radius,
    )


def _initial_step(t: SubTriple) -> float:
    kappa = spd_condition(t.S)
    return 1.0 / (kappa * kappa)


def _sym_inverse(S: np.ndarray) -> np.ndarray:
    """Inverse of a symmetric S, or IllConditionedError past SINGULAR_CONDITION."""
    w, V = np.linalg.eigh(S)
    a = np.abs(w)
    if not (a.min() > 0 and a.max() <= SINGULAR_CONDITION * a.min()):
        raise IllConditionedError("extrapolated S is numerically singular")
    return (V / w) @ V.T


def _project(S, U, B, radius: float) -> tuple[SubTriple, np.ndarray, float]:
    S, Sinv, w = spd_floor_with_inverse(S)
    U = project_orthogonal(U)
    B = project_psd_contraction(B, radius)
    return SubTriple(S, U, B, radius), Sinv, float(w[-1] / w[0])


def _value(A, t: SubTriple, Sinv: np.ndarray) -> float:
    f = _objective(A, t.S, Sinv, t.U, t.B)
    return f if math.isfinite(f) else math.inf


def evaluation_noise(f: float, kappa: float, norm_A: float) -> float:
    """Rounding-error scale of ``f`` evaluated at a triple whose S has condition ``kappa``.

    Forming ``S^-1 U B S`` perturbs ``X`` by about ``eps kappa ||X||``, which
    moves ``f = ||A - X||^2`` by up to ``2 sqrt(f)`` times that.
    """
    root = math.sqrt(f) if math.isfinite(f) else math.inf
    return 2.0 * _EPS * kappa * root * (root + norm_A)


def fgm_solve(A, init: SubTriple, config: SolverConfig = SolverConfig()) -> SolverReport:
    """Minimize ``||A - S^{-1} U B S||_F^2`` starting from ``init``.

    ``init`` must be feasible for ``config.target_radius``, otherwise an
    :class:`InfeasibleError` is raised. Numerical trouble during the run
    (singular extrapolated S, non-finite objective) triggers a restart rather
    than an exception. The returned report holds the last accepted iterate,
    which is the best one seen and never worse than ``init``.
    """
    A = as_square(A, "A")
    if init.S.shape != A.shape:
        raise InfeasibleError(f"init has size {init.S.shape}, A has {A.shape}")
    X = replace(init, target_radius=config.target_radius).validate()
    r = config.target_radius
    # The objective is invariant under S -> cS; work with ||S|| = 1.
    X = replace(X, S=X.S / np.linalg.eigvalsh(X.S)[-1])

    t0 = time.perf_counter()
    trace = SolverTrace()
    X_Sinv = np.linalg.inv(X.S)
    fX = _value(A, X, X_Sinv)
    norm_A = float(np.linalg.norm(A))
    f0 = fX

    gamma = _initial_step(X)
    gamma_floor = config.step_lower_bound_factor * gamma
    gamma_ok = None
    alpha = config.alpha1
    Xp, Xp_Sinv = X, X_Sinv
    failed_restarts = 0
    reason = "iterations"
    w = config.tolerance_window

    trace.append(0, fX, gamma, False, 0.0)
    for k in range(1, config.max_iterations + 1):
        if config.time_limit is not None and time.perf_counter() - t0 >= config.time_limit:
            reason = "time"
            break
        if fX == 0.0:
            reason = "tolerance"
            break

        Xhat, fhat = X, fX
        accepted = False
        try:
            if Xp_Sinv is None:
                Xp_Sinv = _sym_inverse(Xp.S)
            g = _gradient(A, Xp.S, Xp_Sinv, Xp.U, Xp.B)
            if not all(np.all(np.isfinite(b)) for b in g):
                raise IllConditionedError("non-finite gradient")
        except (NumericalError, np.linalg.LinAlgError) as exc:
            log.debug("iteration %d: %s; restarting", k, exc)
            restart = True
        else:
            def trial(step):
                t, Sinv, kappa = _project(Xp.S - step * g.gS, Xp.U - step * g.gU,
                                          Xp.B - step * g.gB, r)
                f = _value(A, t, Sinv)
                # A decrease smaller than the evaluation error is not a decrease.
                return t, Sinv, f, f + evaluation_noise(f, kappa, norm_A)

            Xn, Xn_Sinv, fn, fn_hi = trial(gamma)
            while fn_hi > fhat and gamma >= gamma_floor:
                gamma *= 2.0 / 3.0
                Xn, Xn_Sinv, fn, fn_hi = trial(gamma)
            accepted = fn_hi <= fhat
            restart = gamma < gamma_floor
            if accepted:
                X, X_Sinv, fX = Xn, Xn_Sinv, fn

        if restart:
            # Two restarts in a row without strict decrease: X is stationary
            # to working precision.
            failed_restarts = 0 if (accepted and fX < fhat) else failed_restarts + 1
            Xp, Xp_Sinv = X, X_Sinv
            alpha = config.alpha1
            gamma = gamma_ok if gamma_ok is not None else _initial_step(X)
        else:
            failed_restarts = 0
            gamma_ok = gamma
            alpha, beta = momentum_update(alpha)
            Xp = SubTriple(
                X.S + beta * (X.S - Xhat.S),
                X.U + beta * (X.U - Xhat.U),
                X.B + beta * (X.B - Xhat.B),
                r,
            )
            Xp_Sinv = X_Sinv if beta == 0.0 else None
        trace.append(k, fX, gamma, restart, time.perf_counter() - t0)
        gamma *= 2.0

        if failed_restarts >= 2:
            reason = "tolerance"
            break
        if len(trace) > w:
            f_old = trace.objectives[-1 - w]
            if f_old - fX <= config.rel_tolerance * f_old:
                reason = "tolerance"
                break

    Xmat = assemble(X)
    return SolverReport(
        best_triple=X,
        best_matrix=Xmat,
        objective=float(np.sum((A - Xmat) ** 2)),
        relative_error_percent=relative_error_percent(A, Xmat),
        trace=trace,
        termination_reason=reason,
        initial_objective=f0,
    )
