"""Test-matrix generators and the fixed matrices used in the experiments."""
from __future__ import annotations

import numpy as np


def grcar(n: int, k: int = 3) -> np.ndarray:
    """Grcar matrix: ``-1`` on the subdiagonal, ``1`` on the diagonal and ``k`` superdiagonals."""
    if n < 2 or not (1 <= k < n):
        raise ValueError(f"grcar needs n >= 2 and 1 <= k < n, got n={n}, k={k}")
    A = -np.eye(n, k=-1)
    for j in range(k + 1):
        A += np.eye(n, k=j)
    return A


def scaled_ones(n: int, alpha: float) -> np.ndarray:
    """``alpha * E`` with ``E`` the all-ones matrix; stable iff ``alpha <= 1/n``."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if alpha < 0:
        raise ValueError(f"alpha must be non-negative, got {alpha}")
    return np.full((n, n), float(alpha))


def b_eps(eps: float = 0.1) -> np.ndarray:
    return np.array([[1.0, eps], [-eps, 1.0]])


def c_delta(delta: float = 0.5) -> np.ndarray:
    return np.array([[1.0, 1.0], [0.0, delta]])


_FIXTURES = {
    "gp2018-ex2": [
        [0.6, 0.4, 0.1],
        [0.5, 0.5, 0.3],
        [0.1, 0.1, 0.7],
    ],
    # Nearest stable matrix for gp2018-ex2, as printed to four decimals.
    "gp2018-ex2-solution": [
        [0.5640, 0.3599, 0.0850],
        [0.4716, 0.4684, 0.2881],
        [0.0643, 0.0602, 0.6851],
    ],
    "gp2018-sec44": [
        [0.7, 0.2, 0.1, 0.5, 1.0],
        [0.3, 0.6, 0.2, 0.8, 0.3],
        [0.5, 0.7, 0.9, 1.0, 0.5],
        [0.1, 0.1, 0.3, 0.8, 0.3],
        [0.8, 0.2, 0.9, 0.3, 0.2],
    ],
    # Nonnegative stable approximation of gp2018-sec44 reported with it.
    "gp2018-sec44-nonneg": [
        [0.3796, 0.1797, 0.0, 0.5, 0.7343],
        [0.0, 0.5791, 0.0069, 0.8, 0.0274],
        [0.0580, 0.6719, 0.6403, 1.0, 0.1334],
        [0.0, 0.0, 0.0, 0.8, 0.0],
        [0.4204, 0.1759, 0.6770, 0.3, 0.0],
    ],
    # Multi-start local solution for 2 * ones(3), squared error about 15.02.
    "gp2018-ex3-n3-mrand": [
        [0.9969, 1.4010, 0.7688],
        [0.5544, 0.9878, -0.6507],
        [1.2476, 2.6740, 1.0112],
    ],
}

FIXTURE_NAMES = tuple(sorted([*_FIXTURES, "b-eps", "b-limit", "c-delta", "c-limit"]))


def fixture(name: str) -> np.ndarray:
    """Return a copy of a named fixture matrix.

    ``b-eps`` and ``c-delta`` are the 2x2 families with ``eps = 0.1`` and
    ``delta = 0.5``; ``b-limit`` (identity) and ``c-limit`` are their limits.
    """
    if name in _FIXTURES:
        return np.array(_FIXTURES[name], dtype=float)
    if name == "b-eps":
        return b_eps()
    if name == "b-limit":
        return b_eps(0.0)
    if name == "c-delta":
        return c_delta()
    if name == "c-limit":
        return c_delta(1.0)
    raise KeyError(f"unknown fixture {name!r}; available: {', '.join(FIXTURE_NAMES)}")


def generate(name: str, n: int, order: int = 3, alpha: float | None = None) -> np.ndarray:
    """Dispatch used by the command line ``--generator`` option."""
    if name == "grcar":
        return grcar(n, order)
    if name == "ones":
        return scaled_ones(n, 2.0 / n if alpha is None else alpha)
    raise ValueError(f"unknown generator {name!r}; available: grcar, ones")
