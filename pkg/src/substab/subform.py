"""The SUB parameterization ``X = S^{-1} U B S`` of Schur-stable matrices.

A real square matrix is stable exactly when it can be written with ``S``
symmetric positive definite, ``U`` orthogonal and ``B`` a symmetric positive
semidefinite contraction. Tightening ``||B|| <= r`` for some ``r < 1`` gives
the matrices whose eigenvalues all lie in the disc of radius ``r``.

This module holds the triple type, the objective ``||A - S^{-1}UBS||_F^2``,
its gradients in the ambient matrix space, and the nearest-point
projections onto each block's feasible set.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DimensionError, IllConditionedError, InfeasibleError
from .linalg import (
    as_square,
    solve_discrete_lyapunov,
    spectral_radius,
    sym_eig,
    sym_sqrt,
)

# Extrapolated S blocks beyond this condition number are treated as singular.
SINGULAR_CONDITION = 1e14


@dataclass(frozen=True)
class SubTriple:
    """A point ``(S, U, B)`` in the SUB parameterization.

    Construction does not validate; call :meth:`validate` (or
    :meth:`is_feasible`) when feasibility matters. Momentum extrapolation in
    the solver deliberately produces infeasible triples.
    """

    S: np.ndarray
    U: np.ndarray
    B: np.ndarray
    target_radius: float = 1.0

    @property
    def n(self) -> int:
        return self.S.shape[0]

    def violations(self) -> list[str]:
        out = []
        shapes = {self.S.shape, self.U.shape, self.B.shape}
        if len(shapes) != 1 or self.S.ndim != 2 or self.S.shape[0] != self.S.shape[1]:
            return [f"blocks must be square of equal size, got {sorted(shapes)}"]
        if not (0 < self.target_radius <= 1):
            out.append(f"target radius {self.target_radius} outside (0, 1]")
        for name in "SUB":
            if not np.all(np.isfinite(getattr(self, name))):
                out.append(f"{name} has non-finite entries")
        if out:
            return out
        n = self.n
        if np.linalg.norm(self.S - self.S.T) > 1e-10 * max(1.0, np.linalg.norm(self.S)):
            out.append("S is not symmetric")
        ws = np.linalg.eigvalsh(0.5 * (self.S + self.S.T))
        if ws[0] <= 0:
            out.append(f"S is not positive definite (lambda_min = {ws[0]:.3e})")
        if np.linalg.norm(self.U.T @ self.U - np.eye(n)) > 1e-8:
            out.append("U is not orthogonal")
        if np.linalg.norm(self.B - self.B.T) > 1e-10 * max(1.0, np.linalg.norm(self.B)):
            out.append("B is not symmetric")
        wb = np.linalg.eigvalsh(0.5 * (self.B + self.B.T))
        if wb[0] < -1e-10:
            out.append(f"B is not PSD (lambda_min = {wb[0]:.3e})")
        if wb[-1] > self.target_radius + 1e-10:
            out.append(f"||B|| = {wb[-1]:.12g} exceeds radius {self.target_radius}")
        return out

    def is_feasible(self) -> bool:
        return not self.violations()

    def validate(self) -> "SubTriple":
        problems = self.violations()
        if problems:
            raise InfeasibleError("infeasible SUB triple: " + "; ".join(problems))
        return self


class GradientTriple(NamedTuple):
    gS: np.ndarray
    gU: np.ndarray
    gB: np.ndarray


class Stability(enum.Enum):
    ASYMPTOTICALLY_STABLE = "asymptotically stable"
    STABLE = "stable"
    UNSTABLE = "unstable"


def _inverse(S: np.ndarray) -> np.ndarray:
    try:
        out = np.linalg.inv(S)
    except np.linalg.LinAlgError as exc:
        raise IllConditionedError(f"S is singular: {exc}") from exc
    if not np.all(np.isfinite(out)):
        raise IllConditionedError("S is numerically singular")
    return out


def _check_dims(A: np.ndarray, t: SubTriple) -> None:
    if A.shape != t.S.shape or t.S.shape != t.U.shape or t.U.shape != t.B.shape:
        raise DimensionError(
            f"dimension mismatch: A {A.shape}, S {t.S.shape}, U {t.U.shape}, B {t.B.shape}"
        )


def _residual(A, S, Sinv, U, B) -> np.ndarray:
    return Sinv @ (U @ B @ S) - A


def _objective(A, S, Sinv, U, B) -> float:
    D = _residual(A, S, Sinv, U, B)
    return float(np.vdot(D, D))


def _gradient(A, S, Sinv, U, B) -> GradientTriple:
    R = Sinv @ (U @ B @ S)
    D = R - A
    SinvT = Sinv.T
    gS = 2.0 * SinvT @ (R.T @ D - D @ R.T)
    SDS = SinvT @ D @ S.T
    return GradientTriple(gS, 2.0 * SDS @ B.T, 2.0 * U.T @ SDS)


def assemble(t: SubTriple) -> np.ndarray:
    """Return ``S^{-1} U B S``."""
    try:
        X = np.linalg.solve(t.S, t.U @ t.B @ t.S)
    except np.linalg.LinAlgError as exc:
        raise IllConditionedError(f"S is singular: {exc}") from exc
    if not np.all(np.isfinite(X)):
        raise IllConditionedError("S is numerically singular")
    return X


def objective(A, t: SubTriple) -> float:
    """Squared Frobenius distance ``||A - S^{-1} U B S||_F^2``."""
    A = as_square(A, "A")
    _check_dims(A, t)
    D = A - assemble(t)
    return float(np.vdot(D, D))


def gradient(A, t: SubTriple) -> GradientTriple:
    """Gradients of the objective with respect to ``S``, ``U`` and ``B``.

    With ``R = S^{-1} U B S`` and ``D = R - A``::

        gS = 2 S^{-T} (R^T D - D R^T)
        gU = 2 S^{-T} D S^T B^T
        gB = 2 U^T S^{-T} D S^T

    For symmetric ``S`` the transposes on ``S`` in ``gU`` and ``gB`` drop
    out. The blocks are treated as free matrices, so ``gS`` and ``gB`` are
    in general not symmetric.
    """
    A = as_square(A, "A")
    _check_dims(A, t)
    return _gradient(A, t.S, _inverse(t.S), t.U, t.B)


def clamp_spectrum(X, a: float, b: float = np.inf) -> np.ndarray:
    """Nearest symmetric matrix to ``X`` with spectrum in ``[a, b]``.

    The eigenvalues of the symmetric part ``(X + X^T)/2`` are clipped to
    ``[a, b]``; ``b`` may be ``inf``. Nearness is in the Frobenius norm.
    """
    if a > b:
        raise ValueError(f"empty interval [{a}, {b}]")
    w, V = sym_eig(X, symmetrize=True)
    H = (V * np.clip(w, a, b)) @ V.T
    return 0.5 * (H + H.T)


def project_psd(X) -> np.ndarray:
    return clamp_spectrum(X, 0.0, np.inf)


def project_psd_contraction(X, radius: float = 1.0) -> np.ndarray:
    """Nearest symmetric PSD matrix with spectral norm at most ``radius``."""
    if not (0 < radius <= 1):
        raise ValueError(f"radius must lie in (0, 1], got {radius}")
    return clamp_spectrum(X, 0.0, radius)


def spd_floor(X) -> float:
    """Default eigenvalue floor ``1e-12 * max(1, tr(X)/n)`` used for S."""
    X = np.asarray(X, dtype=float)
    n = X.shape[0]
    return 1e-12 * max(1.0, float(np.trace(X)) / n) if n else 1e-12


def spd_floor_with_inverse(X, floor: float | None = None):
    """Floor projection of ``X`` together with its inverse and eigenvalues."""
    w, V = sym_eig(X, symmetrize=True)
    if floor is None:
        floor = spd_floor(X)
    if not floor > 0:
        raise ValueError(f"floor must be positive, got {floor}")
    w = np.maximum(w, floor)
    S = (V * w) @ V.T
    Sinv = (V / w) @ V.T
    return 0.5 * (S + S.T), 0.5 * (Sinv + Sinv.T), w


def project_spd_floor(X, floor: float | None = None) -> np.ndarray:
    """Project onto ``{S symmetric : S >= floor * I}``.

    The set ``S > 0`` is open and has no nearest point, so a small positive
    floor stands in for strict definiteness. The default floor is
    :func:`spd_floor` of ``X``.
    """
    return spd_floor_with_inverse(X, floor)[0]


def project_orthogonal(X) -> np.ndarray:
    """Nearest orthogonal matrix: the orthogonal polar factor of ``X``."""
    W, _, Qt = np.linalg.svd(as_square(X))
    return W @ Qt


def joint_polar_factor(X, radius: float = 1.0) -> tuple[np.ndarray, np.ndarray]:
    """Minimize ``||X - U B||_F`` over orthogonal ``U`` and PSD ``B``, ``||B|| <= radius``.

    The minimizer is ``(V, min(H, radius))`` where ``X = V H`` is the polar
    decomposition and the minimum is applied to the eigenvalues of ``H``
    (the singular values of ``X``).
    """
    if not (0 < radius <= 1):
        raise ValueError(f"radius must lie in (0, 1], got {radius}")
    W, s, Qt = np.linalg.svd(as_square(X))
    B = (Qt.T * np.minimum(s, radius)) @ Qt
    return W @ Qt, 0.5 * (B + B.T)


def project_triple(S, U, B, target_radius: float = 1.0) -> SubTriple:
    """Blockwise projection of raw ``(S, U, B)`` onto the feasible set."""
    return SubTriple(
        project_spd_floor(S),
        project_orthogonal(U),
        project_psd_contraction(B, target_radius),
        target_radius,
    )


def is_stable(X, tol: float = 1e-8) -> Stability:
    """Classify ``X`` by its spectral radius.

    Semisimplicity of unit-modulus eigenvalues is not tested: anything with
    ``rho(X) <= 1 + tol`` and not below ``1 - tol`` is reported stable.
    """
    rho = spectral_radius(X)
    if rho < 1 - tol:
        return Stability.ASYMPTOTICALLY_STABLE
    if rho <= 1 + tol:
        return Stability.STABLE
    return Stability.UNSTABLE


def similarity_polar(A, S, radius: float = 1.0) -> tuple[np.ndarray, np.ndarray]:
    """Optimal ``(U, B)`` for ``S A S^{-1} ~ U B`` given symmetric positive definite ``S``.

    The similarity is formed in the eigenbasis of ``S`` where it reduces to a
    diagonal row/column scaling. Forming ``S A S^{-1}`` directly loses a
    factor ``kappa(S)^2`` in the later reconstruction ``S^{-1} U B S``; this
    way the loss is ``kappa(S)``.
    """
    A = as_square(A, "A")
    w, V = sym_eig(S, symmetrize=True)
    if w[0] <= 0:
        raise IllConditionedError(f"S is not positive definite (lambda_min = {w[0]:.3e})")
    M = (w[:, None] * (V.T @ A @ V)) / w[None, :]
    Ut, Bt = joint_polar_factor(M, radius)
    B = V @ Bt @ V.T
    return V @ Ut @ V.T, 0.5 * (B + B.T)


def triple_from_stable(A, Q=None) -> SubTriple:
    """SUB triple of a Schur-stable matrix via its Lyapunov certificate.

    Solves ``A^T P A - P + Q = 0`` (``Q = I`` by default), takes
    ``S = P^{1/2}`` and the polar factors of ``S A S^{-1}``. Since
    ``||S A S^{-1}|| < 1`` the contraction clamp is inactive and the triple
    reproduces ``A`` up to rounding.
    """
    A = as_square(A, "A")
    n = A.shape[0]
    P = solve_discrete_lyapunov(A, np.eye(n) if Q is None else Q)
    S = sym_sqrt(P)
    U, B = similarity_polar(A, S, 1.0)
    return SubTriple(S, U, B, 1.0)
