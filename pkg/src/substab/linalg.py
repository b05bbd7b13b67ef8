"""Dense linear-algebra kernels used by the SUB-form solver.

Everything here is a pure function of its arguments and operates on real,
square ``numpy`` arrays. The heavy lifting is delegated to LAPACK through
``numpy.linalg`` and ``scipy.linalg``; the wrappers add the shape checks,
sorting conventions and error types the rest of the package relies on.
"""
from __future__ import annotations

import warnings
from typing import NamedTuple

import numpy as np
import scipy.linalg

from .errors import (
    ConvergenceError,
    DimensionError,
    IllConditionedError,
    NotPositiveDefiniteError,
    SpectralRadiusError,
)

__all__ = [
    "SymEig",
    "PolarFactors",
    "as_square",
    "tolerance",
    "sym_eig",
    "polar_decompose",
    "spectral_radius",
    "spectral_norm",
    "spd_condition",
    "solve_discrete_lyapunov",
    "sym_sqrt",
]


class SymEig(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


class PolarFactors(NamedTuple):
    orthogonal: np.ndarray
    psd: np.ndarray


def as_square(X, name: str = "matrix") -> np.ndarray:
    """Return ``X`` as a float64 2-D array, raising if it is not square."""
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[0] != X.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {X.shape}")
    return X


def tolerance(X, rel: float, floor: float = 1e-12) -> float:
    """Reconstruction tolerance ``rel * ||X||_F`` with an absolute floor."""
    return max(rel * float(np.linalg.norm(X)), floor)


def sym_eig(M, symmetrize: bool = False) -> SymEig:
    """Eigen-decomposition of a symmetric matrix, eigenvalues ascending.

    Only the lower triangle of ``M`` is read unless ``symmetrize`` is set,
    in which case ``(M + M.T) / 2`` is decomposed instead.
    """
    M = as_square(M)
    if symmetrize:
        M = 0.5 * (M + M.T)
    w, V = np.linalg.eigh(M)
    return SymEig(w, V)


def polar_decompose(X) -> PolarFactors:
    """Polar decomposition ``X = V H`` with ``V`` orthogonal and ``H`` PSD.

    Computed from the SVD ``X = W diag(s) Q^T`` as ``V = W Q^T`` and
    ``H = Q diag(s) Q^T``. For rank-deficient ``X`` the orthogonal factor is
    not unique; this choice is the one the SVD happens to complete.
    """
    X = as_square(X)
    W, s, Qt = np.linalg.svd(X)
    V = W @ Qt
    H = (Qt.T * s) @ Qt
    return PolarFactors(V, 0.5 * (H + H.T))


def spectral_radius(X) -> float:
    X = as_square(X)
    if X.size == 0:
        return 0.0
    try:
        lam = np.linalg.eigvals(X)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(
            f"eigenvalue iteration did not converge for {X.shape} matrix: {exc}"
        ) from exc
    return float(np.max(np.abs(lam)))


def spectral_norm(X) -> float:
    """Largest singular value of ``X``."""
    X = as_square(X)
    if X.size == 0:
        return 0.0
    return float(np.linalg.norm(X, 2))


def spd_condition(S) -> float:
    """Condition number ``lambda_max / lambda_min`` of an SPD matrix."""
    w = np.linalg.eigvalsh(as_square(S))
    if w[0] <= 0:
        raise NotPositiveDefiniteError(
            f"matrix is not positive definite (lambda_min = {w[0]:.3e})"
        )
    return float(w[-1] / w[0])


def sym_sqrt(P) -> np.ndarray:
    """Symmetric PSD square root of a symmetric PSD matrix."""
    w, V = sym_eig(P, symmetrize=True)
    if w[0] < -1e-12 * max(1.0, abs(w[-1])):
        raise NotPositiveDefiniteError(
            f"square root of an indefinite matrix (lambda_min = {w[0]:.3e})"
        )
    R = (V * np.sqrt(np.clip(w, 0.0, None))) @ V.T
    return 0.5 * (R + R.T)


def solve_discrete_lyapunov(A, Q) -> np.ndarray:
    """Solve the Stein equation ``A^T P A - P + Q = 0`` for ``P``.

    ``A`` must be Schur stable (``rho(A) < 1``) and ``Q`` symmetric positive
    definite; the returned ``P`` is then symmetric positive definite. The
    result is symmetrized exactly, so ``P - P.T`` is identically zero.

    Raises
    ------
    SpectralRadiusError
        If ``rho(A) >= 1``.
    IllConditionedError
        If the computed solution has a residual far above working accuracy
        or fails to be positive definite.
    """
    A = as_square(A, "A")
    Q = as_square(Q, "Q")
    if A.shape != Q.shape:
        raise DimensionError(f"A {A.shape} and Q {Q.shape} differ in shape")
    rho = spectral_radius(A)
    if rho >= 1.0:
        raise SpectralRadiusError(f"Stein equation needs rho(A) < 1, got {rho:.6g}")
    # scipy solves a X a^H - X + q = 0; pass a = A^T for A^T P A - P + Q = 0.
    # The residual check below replaces scipy's conditioning warning.
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
            P = scipy.linalg.solve_discrete_lyapunov(A.T, Q)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise IllConditionedError(f"Stein equation solve failed: {exc}") from exc
    P = np.real(P)
    P = 0.5 * (P + P.T)
    if not np.all(np.isfinite(P)):
        raise IllConditionedError("Stein equation produced non-finite entries")
    residual = np.linalg.norm(A.T @ P @ A - P + Q)
    # Error scales with ||P||, which blows up as rho(A) -> 1.
    scale = max(np.linalg.norm(Q), np.linalg.norm(P))
    if residual > 1e-6 * scale:
        raise IllConditionedError(
            f"Stein residual {residual:.3e} too large (rho(A) = {rho:.12g})"
        )
    if np.linalg.eigvalsh(P)[0] <= 0:
        raise IllConditionedError(
            f"Stein solution not positive definite (rho(A) = {rho:.12g})"
        )
    return P
