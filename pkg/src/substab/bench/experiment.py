"""Run several initialization strategies on one matrix and collect a JSON report."""
from __future__ import annotations

import json
import logging
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from ..errors import StabilizeError
from ..fgm import SolverConfig, SolverReport
from ..initializers import RNG_ALGORITHM, STRATEGIES, run_strategy
from ..linalg import spectral_radius
from .io import atomic_path

log = logging.getLogger(__name__)

REPORT_VERSION = 1


@dataclass
class ExperimentSpec:
    matrix: np.ndarray
    strategies: list[str]
    config: SolverConfig = field(default_factory=SolverConfig)
    source: str = "matrix"
    starts: int = 100
    include_trace: bool = True

    def __post_init__(self):
        if not self.strategies:
            raise ValueError("at least one strategy is required")
        bad = [s for s in self.strategies if s not in STRATEGIES]
        if bad:
            raise ValueError(f"unknown strategies {bad}; choose from {STRATEGIES}")
        if self.starts < 1:
            raise ValueError("starts must be at least 1")


def _eig_pairs(X: np.ndarray) -> list[list[float]]:
    lam = np.linalg.eigvals(X)
    lam = lam[np.lexsort((lam.imag, lam.real))]
    return [[float(z.real), float(z.imag)] for z in lam]


def _matrix(X) -> list[list[float]]:
    return np.asarray(X, dtype=float).tolist()


@dataclass
class StrategyResult:
    strategy: str
    ok: bool
    error: str | None = None
    objective: float | None = None
    initial_objective: float | None = None
    relative_error_percent: float | None = None
    iterations: int | None = None
    restarts: int | None = None
    termination_reason: str | None = None
    seconds: float | None = None
    spectral_radius: float | None = None
    X: list[list[float]] | None = None
    S: list[list[float]] | None = None
    U: list[list[float]] | None = None
    B: list[list[float]] | None = None
    eigenvalues: list[list[float]] | None = None
    trace: list[list[float]] | None = None

    @classmethod
    def from_report(cls, name: str, rep: SolverReport, seconds: float,
                    include_trace: bool = True) -> "StrategyResult":
        t = rep.best_triple
        return cls(
            strategy=name,
            ok=True,
            objective=rep.objective,
            initial_objective=rep.initial_objective,
            relative_error_percent=rep.relative_error_percent,
            iterations=rep.n_iterations,
            restarts=rep.trace.n_restarts,
            termination_reason=rep.termination_reason,
            seconds=seconds,
            spectral_radius=spectral_radius(rep.best_matrix),
            X=_matrix(rep.best_matrix),
            S=_matrix(t.S),
            U=_matrix(t.U),
            B=_matrix(t.B),
            eigenvalues=_eig_pairs(rep.best_matrix),
            trace=rep.trace.rows() if include_trace else None,
        )

    def matrix(self) -> np.ndarray | None:
        return None if self.X is None else np.array(self.X)


@dataclass
class ExperimentReport:
    source: str
    A: list[list[float]]
    eigenvalues_A: list[list[float]]
    config: dict[str, Any]
    starts: int
    rng: str
    results: list[StrategyResult]
    version: int = REPORT_VERSION

    @property
    def matrix(self) -> np.ndarray:
        return np.array(self.A)

    def result(self, strategy: str) -> StrategyResult:
        for r in self.results:
            if r.strategy == strategy:
                return r
        raise KeyError(strategy)

    @property
    def failed(self) -> list[StrategyResult]:
        return [r for r in self.results if not r.ok]

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "ExperimentReport":
        d = dict(d)
        d["results"] = [StrategyResult(**r) for r in d["results"]]
        return cls(**d)

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), allow_nan=True, **kw)

    @classmethod
    def from_json(cls, text: str) -> "ExperimentReport":
        return cls.from_dict(json.loads(text))

    def save(self, path) -> None:
        with atomic_path(path) as tmp:
            Path(tmp).write_text(self.to_json(indent=1))

    @classmethod
    def load(cls, path) -> "ExperimentReport":
        return cls.from_json(Path(path).read_text())

    def summary(self) -> str:
        lines = [f"{self.source}: n = {len(self.A)}, rho(A) = "
                 f"{max(np.hypot(*z) for z in self.eigenvalues_A):.6g}"]
        for r in self.results:
            if r.ok:
                lines.append(
                    f"  {r.strategy:<10} ||A-X||_F^2 = {r.objective:.6g}  "
                    f"rel.err = {r.relative_error_percent:.4g}%  rho(X) = "
                    f"{r.spectral_radius:.10g}  iters = {r.iterations}  "
                    f"[{r.termination_reason}, {r.seconds:.2f}s]"
                )
            else:
                lines.append(f"  {r.strategy:<10} FAILED: {r.error}")
        return "\n".join(lines)


def run_experiment(spec: ExperimentSpec) -> ExperimentReport:
    """Solve ``spec.matrix`` once per strategy; failures are recorded, not raised."""
    A = np.asarray(spec.matrix, dtype=float)
    results = []
    for name in spec.strategies:
        t0 = time.perf_counter()
        try:
            rep = run_strategy(A, name, spec.config, spec.starts)
        except (StabilizeError, np.linalg.LinAlgError, ValueError) as exc:
            log.warning("strategy %s failed: %s", name, exc)
            results.append(StrategyResult(strategy=name, ok=False,
                                          error=f"{type(exc).__name__}: {exc}",
                                          seconds=time.perf_counter() - t0))
            continue
        results.append(StrategyResult.from_report(
            name, rep, time.perf_counter() - t0, spec.include_trace))
    return ExperimentReport(
        source=spec.source,
        A=_matrix(A),
        eigenvalues_A=_eig_pairs(A),
        config=asdict(spec.config),
        starts=spec.starts,
        rng=RNG_ALGORITHM,
        results=results,
    )
