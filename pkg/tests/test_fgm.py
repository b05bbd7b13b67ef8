from dataclasses import replace

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from substab.bench.matrices import fixture, grcar, scaled_ones
from substab.errors import InfeasibleError
from substab.fgm import SolverConfig, fgm_solve, fgm_step, momentum_update
from substab.initializers import init_lmi, init_random, init_standard
from substab.linalg import spectral_radius
from substab.subform import SubTriple, assemble, gradient, objective, project_triple

from conftest import random_stable

# High-precision evaluation of the momentum recursion at alpha = 0.5.
ALPHA_HALF_NEXT = 0.3903882032022075687
BETA_HALF = 0.3903882032022075687


def test_momentum_frozen_values():
    a, b = momentum_update(0.5)
    assert a == pytest.approx(ALPHA_HALF_NEXT, rel=1e-15)
    assert b == pytest.approx(BETA_HALF, rel=1e-15)


@given(st.floats(1e-6, 1 - 1e-6))
def test_momentum_against_mpmath(alpha):
    mpmath.mp.dps = 40
    x = mpmath.mpf(alpha)
    nxt = (mpmath.sqrt(x ** 4 + 4 * x ** 2) - x ** 2) / 2
    beta = x * (1 - x) / (x ** 2 + nxt)
    a, b = momentum_update(alpha)
    assert a == pytest.approx(float(nxt), rel=1e-12)
    assert b == pytest.approx(float(beta), rel=1e-12)
    assert 0 < a < 1 and 0 < b < 1


def test_momentum_sequence_decreasing():
    a = 0.5
    for _ in range(1000):
        nxt, _ = momentum_update(a)
        assert 0 < nxt < a
        a = nxt
    assert momentum_update(1e-12)[0] < 1e-11


def test_config_validation():
    with pytest.raises(ValueError):
        SolverConfig(alpha1=1.0)
    with pytest.raises(ValueError):
        SolverConfig(max_iterations=0)
    with pytest.raises(ValueError):
        SolverConfig(target_radius=1.2)
    with pytest.raises(ValueError):
        SolverConfig(time_limit=0)


class TestStep:
    def test_zero_step_projects(self, rng):
        A = rng.standard_normal((3, 3))
        t = init_standard(A)
        raw = SubTriple(t.S + 0.1, t.U + 0.1, t.B + 0.1)
        out = fgm_step(A, t, raw, 0.0)
        ref = project_triple(raw.S, raw.U, raw.B)
        for x, y in zip((out.S, out.U, out.B), (ref.S, ref.U, ref.B)):
            np.testing.assert_allclose(x, y, atol=1e-14)

    def test_fixed_point_when_exact(self, rng):
        A = random_stable(rng, 4, 0.8)
        t = init_lmi(A)
        out = fgm_step(A, t, t, 0.1)
        assert np.linalg.norm(assemble(out) - A) < 1e-8

    def test_one_step_decreases(self):
        A = fixture("gp2018-ex2")
        t = init_standard(A)
        f0 = objective(A, t)
        gamma = 1.0
        while True:
            out = fgm_step(A, t, t, gamma)
            if objective(A, out) < f0:
                break
            gamma *= 2 / 3
            assert gamma > 1e-12
        assert out.is_feasible()

    def test_negative_step_rejected(self, rng):
        t = init_standard(np.eye(2))
        with pytest.raises(ValueError):
            fgm_step(np.eye(2), t, t, -1.0)


class TestSolve:
    def test_infeasible_init(self):
        I = np.eye(2)
        with pytest.raises(InfeasibleError):
            fgm_solve(I, SubTriple(I, 2 * I, I))
        with pytest.raises(InfeasibleError):
            fgm_solve(np.eye(3), SubTriple(I, I, I))

    def test_stable_input_stays_exact(self, rng):
        A = random_stable(rng, 4, 0.9)
        rep = fgm_solve(A, init_lmi(A), SolverConfig(max_iterations=200))
        assert rep.objective < 1e-14
        assert np.linalg.norm(rep.best_matrix - A) <= 1e-8 * np.linalg.norm(A)
        assert rep.termination_reason == "tolerance"

    def test_scaled_ones_from_lmi(self):
        n = 10
        A = scaled_ones(n, 2 / n)
        rep = fgm_solve(A, init_lmi(A), SolverConfig(max_iterations=2000))
        np.testing.assert_allclose(rep.best_matrix, np.ones((n, n)) / n, atol=1e-6)
        assert rep.objective == pytest.approx(np.sum((A - np.ones((n, n)) / n) ** 2), abs=1e-8)
        assert rep.objective == pytest.approx(1.0, abs=1e-8)

    @pytest.mark.parametrize("kind", ["standard", "lmi", "random"])
    def test_monotone_bounded_stable(self, kind):
        A = grcar(6)
        init = {"standard": init_standard, "lmi": init_lmi,
                "random": lambda A: init_random(A, 3)}[kind](A)
        rep = fgm_solve(A, init, SolverConfig(max_iterations=400, rel_tolerance=0))
        f = np.array(rep.trace.objectives)
        assert np.all(np.diff(f) <= 0)
        assert rep.objective <= objective(A, init) + 1e-12
        assert spectral_radius(rep.best_matrix) <= 1 + 1e-8
        f0 = rep.trace.objectives[0]
        assert np.linalg.norm(rep.best_matrix) <= np.sqrt(f0) + np.linalg.norm(A) + 1e-8
        assert rep.best_triple.is_feasible()
        assert rep.relative_error_percent == pytest.approx(
            100 * np.linalg.norm(A - rep.best_matrix) / np.linalg.norm(A), rel=1e-12)

    def test_deterministic_without_time_limit(self):
        A = grcar(5)
        cfg = SolverConfig(max_iterations=300, rel_tolerance=0)
        r1 = fgm_solve(A, init_random(A, 7), cfg)
        r2 = fgm_solve(A, init_random(A, 7), cfg)
        assert r1.trace.objectives == r2.trace.objectives
        assert r1.trace.steps == r2.trace.steps
        assert r1.trace.restarts == r2.trace.restarts
        assert np.array_equal(r1.best_matrix, r2.best_matrix)

    def test_target_radius(self):
        A = fixture("gp2018-ex2")
        cfg = SolverConfig(max_iterations=500, target_radius=0.9)
        rep = fgm_solve(A, init_standard(A, 0.9), cfg)
        assert spectral_radius(rep.best_matrix) <= 0.9 + 1e-8

    def test_iteration_cap(self):
        A = grcar(5)
        rep = fgm_solve(A, init_standard(A), SolverConfig(max_iterations=25, rel_tolerance=0))
        assert rep.termination_reason == "iterations"
        assert rep.n_iterations == 26  # includes the initial point

    def test_time_limit(self):
        A = grcar(8)
        rep = fgm_solve(A, init_standard(A), SolverConfig(max_iterations=10 ** 9,
                                                          time_limit=0.3, rel_tolerance=0))
        assert rep.termination_reason == "time"
        assert rep.trace.elapsed[-1] < 1.0

    def test_scale_of_S_is_irrelevant(self, rng):
        A = rng.standard_normal((3, 3)) * 2
        t = init_random(A, 1)
        f = objective(A, t)
        assert objective(A, replace(t, S=7.5 * t.S)) == pytest.approx(f, rel=1e-12)
        g1, g2 = gradient(A, t), gradient(A, replace(t, S=2 * t.S))
        np.testing.assert_allclose(g2.gS, g1.gS / 2, rtol=1e-9, atol=1e-12)


def _exact_objective(A, t):
    mpmath.mp.dps = 50
    S, U, B = (mpmath.matrix(M.tolist()) for M in (t.S, t.U, t.B))
    X = S ** -1 * U * B * S
    n = A.shape[0]
    return sum((X[i, j] - A[i, j]) ** 2 for i in range(n) for j in range(n))


def test_rounding_noise_is_not_descent():
    # The LMI start here has kappa(S) ~ 2e4, so double-precision objective values
    # carry ~1e-11 noise while the start is within 2e-9 of the optimum.
    n = 10
    A = scaled_ones(n, 2 / n)
    t = init_lmi(A)
    rep = fgm_solve(A, t, SolverConfig(max_iterations=1000))
    assert _exact_objective(A, rep.best_triple) <= _exact_objective(A, t)
    assert np.linalg.norm(rep.best_matrix - np.ones((n, n)) / n) < 1e-9


def test_evaluation_noise_scale():
    from substab.fgm import evaluation_noise
    eps = np.finfo(float).eps
    assert evaluation_noise(0.0, 1e6, 3.0) == 0.0
    assert evaluation_noise(1.0, 1.0, 2.0) == pytest.approx(6 * eps)
    assert evaluation_noise(4.0, 10.0, 1.0) == pytest.approx(2 * eps * 10 * 2 * 3)
