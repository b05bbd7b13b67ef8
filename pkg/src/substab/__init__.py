"""Nearest Schur-stable matrix via the SUB parameterization ``X = S^-1 U B S``."""
from .errors import (
    ConvergenceError,
    DimensionError,
    IllConditionedError,
    InfeasibleError,
    NotPositiveDefiniteError,
    NumericalError,
    SpectralRadiusError,
    StabilizeError,
)
from .fgm import SolverConfig, SolverReport, SolverTrace, fgm_solve, fgm_step, momentum_update
from .initializers import (
    STRATEGIES,
    InitStrategy,
    init_lmi,
    init_random,
    init_standard,
    make_init,
    multistart,
    run_strategy,
)
from .linalg import solve_discrete_lyapunov, spectral_radius
from .subform import (
    Stability,
    SubTriple,
    assemble,
    gradient,
    is_stable,
    objective,
)

__version__ = "0.1.0"


def stabilize(A, init: str = "standard", config: SolverConfig | None = None,
              starts: int = 100) -> SolverReport:
    """Convenience wrapper: run one initialization strategy and the solver on ``A``."""
    return run_strategy(A, init, config or SolverConfig(), starts)


__all__ = [
    "ConvergenceError", "DimensionError", "IllConditionedError", "InfeasibleError",
    "NotPositiveDefiniteError", "NumericalError", "SpectralRadiusError", "StabilizeError",
    "SolverConfig", "SolverReport", "SolverTrace", "fgm_solve", "fgm_step", "momentum_update",
    "STRATEGIES", "InitStrategy", "init_lmi", "init_random", "init_standard", "make_init",
    "multistart", "run_strategy", "solve_discrete_lyapunov", "spectral_radius",
    "Stability", "SubTriple", "assemble", "gradient", "is_stable", "objective", "stabilize",
]
