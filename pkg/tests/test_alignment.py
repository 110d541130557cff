"""CD / CDPM optimizer tests: closed-form oracles, monotonicity, algebra."""

import numpy as np
import pytest

from gftdual.alignment import (CD, CDPM, SolverConfig, cd_align, cdpm_align,
                               isomorphism_transport, multistart,
                               optimal_phases, run_pair, trace_objective,
                               verify_circulant_duality)
from gftdual.errors import (NonOrthogonalInputError, NotCirculantError,
                            RepeatedEigenvaluesError, SizeMismatchError)
from gftdual.graphs import (circulant, erdos_renyi, invert_permutation,
                            permutation_matrix)
from gftdual.rng import derive_stream
from gftdual.spectral import eigendecompose


def _random_unitary(rng, n, complex_valued=False):
    a = rng.standard_normal((n, n))
    if complex_valued:
        a = a + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(a)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


def _eigvecs(n, p, seed):
    return eigendecompose(erdos_renyi(n, p, seed)).vectors


def test_optimal_phases_against_grid_search():
    rng = np.random.default_rng(0)
    thetas = np.linspace(0.0, 2.0 * np.pi, 4096, endpoint=False)
    circle = np.exp(1j * thetas)
    for _ in range(20):
        n = int(rng.integers(1, 7))
        a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        d, value = optimal_phases(a)
        assert np.max(np.abs(np.abs(d) - 1.0)) <= 1e-14
        diag = np.diagonal(a)
        # per-coordinate maximum of Re(A_kk d_k) over the unit circle
        grid_best = float(np.sum(np.max(np.real(np.outer(diag, circle)), axis=1)))
        exact = float(np.sum(np.abs(diag)))
        assert value >= grid_best - 1e-9
        assert abs(value - exact) <= 1e-12
        assert abs(float(np.real(np.sum(diag * d))) - value) <= 1e-12


def test_optimal_phases_zero_diagonal():
    a = np.zeros((3, 3), dtype=complex)
    a[0, 0] = 2.0 - 1.0j
    d, value = optimal_phases(a)
    assert d[1] == 1.0 + 0.0j and d[2] == 1.0 + 0.0j
    assert abs(value - abs(a[0, 0])) <= 1e-14
    with pytest.raises(SizeMismatchError):
        optimal_phases(np.zeros((2, 3)))


def test_trace_objective_matches_matrix_form():
    rng = np.random.default_rng(1)
    for trial in range(15):
        n = int(rng.integers(2, 8))
        complex_valued = trial % 2 == 1
        v1 = _random_unitary(rng, n, complex_valued)
        v2 = _random_unitary(rng, n, complex_valued)
        d1 = np.exp(1j * rng.uniform(0, 2 * np.pi, n))
        d2 = np.exp(1j * rng.uniform(0, 2 * np.pi, n))
        p1 = rng.permutation(n)
        p2 = rng.permutation(n)
        m = (v1 @ np.diag(d1) @ permutation_matrix(p1)
             @ v2 @ np.diag(d2) @ permutation_matrix(p2))
        expected = float(np.real(np.trace(m)))
        got = trace_objective(v1, d1, p1, v2, d2, p2)
        assert abs(got - expected) <= 1e-10


def test_dualness_matches_frobenius_distance():
    rng = np.random.default_rng(2)
    v1 = _eigvecs(10, 0.4, 5)
    v2 = _eigvecs(10, 0.4, 6)
    solution = cdpm_align(v1, v2)
    m = (v1 @ np.diag(solution.d1) @ permutation_matrix(solution.p1)
         @ v2 @ np.diag(solution.d2) @ permutation_matrix(solution.p2))
    direct = float(np.linalg.norm(m - np.eye(10)))
    assert abs(direct - solution.dualness) <= 1e-9


@pytest.mark.parametrize("method", [cd_align, cdpm_align])
def test_descent_is_monotone_and_consistent(method):
    v1 = _eigvecs(12, 0.4, 10)
    v2 = _eigvecs(12, 0.4, 11)
    trace = []
    solution = method(v1, v2, trace=trace)
    assert len(trace) == 1 + 2 * solution.iterations
    for a, b in zip(trace, trace[1:]):
        assert b >= a - 1e-12
    assert solution.converged
    assert abs(trace[-1] - solution.objective) <= 1e-12
    recomputed = trace_objective(v1, solution.d1, solution.p1,
                                 v2, solution.d2, solution.p2)
    assert abs(recomputed - solution.objective) <= 1e-12
    expected_dualness = np.sqrt(max(0.0, 24.0 - 2.0 * solution.objective))
    assert abs(solution.dualness - expected_dualness) <= 1e-14


def test_cd_keeps_identity_permutations():
    v1 = _eigvecs(8, 0.5, 20)
    v2 = _eigvecs(8, 0.5, 21)
    solution = cd_align(v1, v2)
    assert np.array_equal(solution.p1, np.arange(8))
    assert np.array_equal(solution.p2, np.arange(8))


def test_transposed_basis_is_immediately_optimal():
    v1 = _eigvecs(7, 0.5, 30)
    solution = cd_align(v1, v1.T)
    assert abs(solution.objective - 7.0) <= 1e-9
    assert solution.iterations == 1
    assert abs(solution.dualness) <= 1e-4


def test_planted_optimum_is_a_fixed_point():
    rng = np.random.default_rng(5)
    n = 10
    v1 = _eigvecs(n, 0.5, 77)
    d1 = rng.choice([-1.0, 1.0], size=n).astype(complex)
    d2 = rng.choice([-1.0, 1.0], size=n).astype(complex)
    p1 = rng.permutation(n)
    p2 = rng.permutation(n)
    # choose V2 so that V1 D1 P1 V2 D2 P2 = I exactly
    v2 = (permutation_matrix(p1).T @ np.diag(d1).real @ v1.T
          @ permutation_matrix(p2).T @ np.diag(d2).real)
    assert np.max(np.abs(v2.T @ v2 - np.eye(n))) <= 1e-12
    assert abs(trace_objective(v1, d1, p1, v2, d2, p2) - n) <= 1e-9
    solution = cdpm_align(v1, v2, init=(d1, p1, d2, p2))
    assert abs(solution.objective - n) <= 1e-9
    assert solution.iterations == 1
    assert solution.converged
    assert solution.dualness <= 1e-4


def test_cd_started_at_best_sign_pair_dominates_it():
    n = 5
    v1 = _eigvecs(n, 0.6, 3)
    v2 = _eigvecs(n, 0.6, 4)
    best = -np.inf
    best_init = None
    for i in range(2 ** n):
        s1 = np.array([1.0 if (i >> k) & 1 else -1.0 for k in range(n)])
        for j in range(2 ** n):
            s2 = np.array([1.0 if (j >> k) & 1 else -1.0 for k in range(n)])
            value = float(np.trace((v1 * s1) @ (v2 * s2)))
            if value > best:
                best = value
                best_init = (s1.astype(complex), s2.astype(complex))
    solution = cd_align(v1, v2, init=best_init)
    assert solution.objective >= best - 1e-12


def test_multistart_deterministic_and_matches_manual_restart():
    v1 = _eigvecs(9, 0.4, 40)
    v2 = _eigvecs(9, 0.4, 41)
    config = SolverConfig(restarts=10, seed=12)
    first = multistart(CDPM, v1, v2, config)
    second = multistart(CDPM, v1, v2, config)
    assert first.objective == second.objective
    assert np.array_equal(first.d1, second.d1)
    assert np.array_equal(first.p2, second.p2)
    # restart 0 reproduces cdpm_align on the derived stream's init
    # (draw order: both phase vectors, then both permutations)
    single = multistart(CDPM, v1, v2, SolverConfig(restarts=1, seed=12))
    stream = derive_stream(12, 0)
    d1 = stream.unit_phases(9)
    d2 = stream.unit_phases(9)
    p1 = stream.permutation(9)
    p2 = stream.permutation(9)
    manual = cdpm_align(v1, v2, SolverConfig(restarts=1, seed=12), (d1, p1, d2, p2))
    assert single.objective == manual.objective


def test_multistart_more_restarts_never_worse():
    v1 = _eigvecs(9, 0.4, 50)
    v2 = _eigvecs(9, 0.4, 51)
    few = multistart(CD, v1, v2, SolverConfig(restarts=2, seed=7))
    many = multistart(CD, v1, v2, SolverConfig(restarts=25, seed=7))
    assert many.objective >= few.objective


def test_cdpm_beats_cd_on_seeded_pairs():
    for seed in (7, 11, 21):
        v1 = _eigvecs(12, 0.4, seed)
        v2 = _eigvecs(12, 0.4, seed + 1000)
        config = SolverConfig(restarts=40, seed=3)
        cd = multistart(CD, v1, v2, config)
        cdpm = multistart(CDPM, v1, v2, config)
        assert cdpm.objective >= cd.objective - 1e-12


def test_multistart_rejects_unknown_method():
    v = np.eye(3)
    with pytest.raises(ValueError):
        multistart("newton", v, v)


def test_run_pair_smoke_and_repeated_eigenvalues():
    g1 = erdos_renyi(10, 0.4, 62)
    g2 = erdos_renyi(10, 0.4, 63)
    solution = run_pair(g1, g2, CD, SolverConfig(restarts=5, seed=1))
    assert 0.0 <= solution.objective <= 10.0 + 1e-9
    complete = erdos_renyi(4, 1.0, 0)
    with pytest.raises(RepeatedEigenvaluesError) as info:
        run_pair(complete, complete, CDPM, SolverConfig(restarts=1))
    assert info.value.min_gap <= 1e-8
    with pytest.raises(SizeMismatchError):
        run_pair(erdos_renyi(4, 0.5, 0), erdos_renyi(5, 0.5, 0), CD)


def test_isomorphism_transport_preserves_objective():
    rng = np.random.default_rng(9)
    n = 10
    v1 = _eigvecs(n, 0.4, 70)
    v2 = _eigvecs(n, 0.4, 71)
    solution = cdpm_align(v1, v2)
    for side in (1, 2):
        p = rng.permutation(n)
        moved = isomorphism_transport(solution, p, side)
        inv = invert_permutation(p)
        if side == 1:
            objective = trace_objective(v1[inv], moved.d1, moved.p1,
                                        v2, moved.d2, moved.p2)
        else:
            objective = trace_objective(v1, moved.d1, moved.p1,
                                        v2[inv], moved.d2, moved.p2)
        assert abs(objective - solution.objective) <= 1e-12
        assert moved.objective == solution.objective
    with pytest.raises(ValueError):
        isomorphism_transport(solution, np.arange(n), 3)


def test_verify_circulant_duality():
    for n, offsets in ((4, [(1, 1.0)]), (6, [(1, 1.0), (2, 0.5)]),
                       (8, [(3, 2.0)]), (12, [(1, 1.0), (4, 0.5), (6, 0.25)])):
        g1 = circulant(n, offsets)
        g2 = circulant(n, [(1, 3.0)])
        assert verify_circulant_duality(g1, g2) <= 1e-9
    tree = erdos_renyi(8, 0.3, 2)
    ring = circulant(8, [(1, 1.0)])
    with pytest.raises(NotCirculantError):
        verify_circulant_duality(tree, ring)
    with pytest.raises(SizeMismatchError):
        verify_circulant_duality(circulant(4, [(1, 1.0)]), circulant(6, [(1, 1.0)]))


def test_input_validation():
    with pytest.raises(NonOrthogonalInputError):
        cd_align(np.eye(3) * 2.0, np.eye(3))
    with pytest.raises(SizeMismatchError):
        cd_align(np.eye(3), np.eye(4))
    with pytest.raises(SizeMismatchError):
        cdpm_align(np.eye(3), np.eye(3), init=(np.ones(2), np.arange(3),
                                               np.ones(3), np.arange(3)))
    with pytest.raises(SizeMismatchError):
        trace_objective(np.eye(3), np.ones(3), np.arange(3),
                        np.eye(3), np.ones(4), np.arange(3))


def test_solver_config_validation():
    with pytest.raises(ValueError):
        SolverConfig(epsilon=0.0)
    with pytest.raises(ValueError):
        SolverConfig(max_iterations=0)
    with pytest.raises(ValueError):
        SolverConfig(restarts=0)
    config = SolverConfig()
    assert config.epsilon == 1e-8
    assert config.max_iterations == 500
    assert config.restarts == 200
    assert config.seed == 0
