"""Dualness objective and the CD / CDPM alternating optimizers.

A solution is a tuple (d1, p1, d2, p2) of per-side unit-modulus phase
vectors and permutations scoring

    objective = Re tr(V1 D1 P1 V2 D2 P2),

with dualness = sqrt(max(0, 2n - 2 objective)).  Permutations are stored
as index arrays sigma with matrix P[i, sigma(i)] = 1, so P.M = M[sigma]
and M.P = M[:, sigma_inverse].
"""

import math
from dataclasses import dataclass

import numpy as np

from .assignment import solve_assignment_max
from .errors import (NonOrthogonalInputError, RepeatedEigenvaluesError,
                     SizeMismatchError, NotCirculantError)
from .graphs import Graph, check_permutation, invert_permutation, is_circulant
from .rng import derive_stream
from .spectral import (dft_matrix, eigendecompose, has_distinct_eigenvalues,
                       minimum_eigenvalue_gap)

ZERO_DIAGONAL_TOL = 1e-12
ORTHOGONALITY_TOL = 1e-8
CIRCULANT_DIAG_TOL = 1e-9

CD = "CD"
CDPM = "CDPM"


@dataclass(frozen=True)
class SolverConfig:
    """Convergence threshold, iteration cap, restart count and seed."""

    epsilon: float = 1e-8
    max_iterations: int = 500
    restarts: int = 200
    seed: int = 0

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")


@dataclass(frozen=True)
class AlignmentSolution:
    d1: np.ndarray
    d2: np.ndarray
    p1: np.ndarray
    p2: np.ndarray
    objective: float
    dualness: float
    iterations: int
    converged: bool


def _check_square(v, name):
    v = np.asarray(v)
    if np.iscomplexobj(v):
        v = v.astype(complex)
    else:
        v = v.astype(float)
    if v.ndim != 2 or v.shape[0] != v.shape[1]:
        raise SizeMismatchError("%s must be square, got shape %s" % (name, v.shape))
    return v


def _check_orthogonal(v, name):
    v = _check_square(v, name)
    n = v.shape[0]
    residual = np.max(np.abs(v.conj().T @ v - np.eye(n))) if n else 0.0
    if residual > ORTHOGONALITY_TOL:
        raise NonOrthogonalInputError(
            "%s is not orthogonal: max |V*V - I| = %.3e" % (name, residual))
    return v


def _check_phases(d, n, name):
    d = np.asarray(d, dtype=complex)
    if d.shape != (n,):
        raise SizeMismatchError("%s must have length %d" % (name, n))
    return d


def _dualness_from_objective(n, objective):
    return math.sqrt(max(0.0, 2.0 * n - 2.0 * objective))


def trace_objective(v1, d1, p1, v2, d2, p2):
    """Re tr(V1 diag(d1) P1 V2 diag(d2) P2)."""
    v1 = _check_orthogonal(v1, "V1")
    v2 = _check_orthogonal(v2, "V2")
    n = v1.shape[0]
    if v2.shape[0] != n:
        raise SizeMismatchError("V1 is %dx%d but V2 is %dx%d"
                                % (n, n, v2.shape[0], v2.shape[0]))
    d1 = _check_phases(d1, n, "d1")
    d2 = _check_phases(d2, n, "d2")
    p1 = check_permutation(p1, n)
    p2 = check_permutation(p2, n)
    left = (v1 * d1)[:, invert_permutation(p1)]
    right = (v2 * d2)[:, invert_permutation(p2)]
    return float(np.real(np.trace(left @ right)))


def optimal_phases(a):
    """Closed-form phase update d_k = conj(A_kk)/|A_kk| and its value.

    Near-zero diagonal entries (|A_kk| <= 1e-12) get phase 1 and
    contribute 0 to the value.
    """
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise SizeMismatchError("optimal_phases needs a square matrix")
    diag = np.diagonal(a).astype(complex)
    mag = np.abs(diag)
    keep = mag > ZERO_DIAGONAL_TOL
    d = np.where(keep, np.conj(diag) / np.where(keep, mag, 1.0), 1.0 + 0.0j)
    value = float(np.sum(np.where(keep, mag, 0.0)))
    return d, value


def _descend(v1, v2, d1, p1, d2, p2, epsilon, max_iterations,
             update_permutations, trace=None):
    """Shared CD/CDPM loop.  Mutates nothing; returns the final state.

    trace, when given, receives the objective after every half-step.
    """
    d1 = d1.astype(complex)
    d2 = d2.astype(complex)
    previous = trace_objective(v1, d1, p1, v2, d2, p2)
    if trace is not None:
        trace.append(previous)
    iterations = 0
    converged = False
    current = previous
    for _ in range(max_iterations):
        # side 2: objective = Re tr(P2 S2 D2) = sum_k Re(S2[p2(k), k] d2[k])
        s2 = (v1 * d1)[:, invert_permutation(p1)] @ v2
        if update_permutations:
            p2, _ = solve_assignment_max(np.abs(s2))
        d2, half_value = optimal_phases(s2[p2])
        if trace is not None:
            trace.append(half_value)
        # side 1: objective = Re tr(P1 S1 D1), S1 = V2 D2 P2 V1
        s1 = (v2 * d2)[:, invert_permutation(p2)] @ v1
        if update_permutations:
            p1, _ = solve_assignment_max(np.abs(s1))
        d1, current = optimal_phases(s1[p1])
        if trace is not None:
            trace.append(current)
        iterations += 1
        if current - previous < epsilon:
            converged = True
            break
        previous = current
    return d1, p1, d2, p2, current, iterations, converged


def _prepare_pair(v1, v2):
    v1 = _check_orthogonal(v1, "V1")
    v2 = _check_orthogonal(v2, "V2")
    if v1.shape != v2.shape:
        raise SizeMismatchError("V1 and V2 sizes differ: %s vs %s"
                                % (v1.shape, v2.shape))
    return v1, v2, v1.shape[0]


def cd_align(v1, v2, config=SolverConfig(), init=None, trace=None):
    """Coordinate descent on the phases with permutations fixed to identity.

    init is an optional (d1, d2) pair; the default start is all-ones
    phases.  trace, when a list, receives the objective value after the
    initialization and after every half-step.
    """
    v1, v2, n = _prepare_pair(v1, v2)
    identity = np.arange(n, dtype=np.intp)
    if init is None:
        d1 = np.ones(n, dtype=complex)
        d2 = np.ones(n, dtype=complex)
    else:
        d1 = _check_phases(init[0], n, "init d1")
        d2 = _check_phases(init[1], n, "init d2")
    d1, p1, d2, p2, objective, iterations, converged = _descend(
        v1, v2, d1, identity, d2, identity,
        config.epsilon, config.max_iterations, update_permutations=False,
        trace=trace)
    return AlignmentSolution(d1, d2, p1, p2, objective,
                             _dualness_from_objective(n, objective),
                             iterations, converged)


def cdpm_align(v1, v2, config=SolverConfig(), init=None, trace=None):
    """CD extended with per-iteration exact max-assignment permutation updates.

    init is an optional (d1, p1, d2, p2) tuple; the default start is
    all-ones phases and identity permutations.  trace, when a list,
    receives the objective value after the initialization and after
    every half-step.
    """
    v1, v2, n = _prepare_pair(v1, v2)
    if init is None:
        d1 = np.ones(n, dtype=complex)
        d2 = np.ones(n, dtype=complex)
        p1 = np.arange(n, dtype=np.intp)
        p2 = np.arange(n, dtype=np.intp)
    else:
        d1 = _check_phases(init[0], n, "init d1")
        p1 = check_permutation(init[1], n)
        d2 = _check_phases(init[2], n, "init d2")
        p2 = check_permutation(init[3], n)
    d1, p1, d2, p2, objective, iterations, converged = _descend(
        v1, v2, d1, p1, d2, p2,
        config.epsilon, config.max_iterations, update_permutations=True,
        trace=trace)
    return AlignmentSolution(d1, d2, p1, p2, objective,
                             _dualness_from_objective(n, objective),
                             iterations, converged)


def _random_init(stream, n, with_permutations):
    d1 = stream.unit_phases(n)
    d2 = stream.unit_phases(n)
    if not with_permutations:
        return d1, d2
    p1 = stream.permutation(n)
    p2 = stream.permutation(n)
    return d1, p1, d2, p2


def multistart(method, v1, v2, config=SolverConfig()):
    """Best of config.restarts independent seeded runs of CD or CDPM.

    Restart r uses the derived stream SplitMix64(seed + r); phases are
    uniform on the unit circle, permutations uniform.  The best
    objective wins; ties keep the earliest restart.
    """
    method = method.upper()
    if method not in (CD, CDPM):
        raise ValueError("method must be CD or CDPM, got %r" % (method,))
    v1, v2, n = _prepare_pair(v1, v2)
    best = None
    for r in range(config.restarts):
        stream = derive_stream(config.seed, r)
        if method == CD:
            init = _random_init(stream, n, with_permutations=False)
            solution = cd_align(v1, v2, config, init)
        else:
            init = _random_init(stream, n, with_permutations=True)
            solution = cdpm_align(v1, v2, config, init)
        if best is None or solution.objective > best.objective:
            best = solution
    return best


def run_pair(g1: Graph, g2: Graph, method, config=SolverConfig()):
    """Eigendecompose a graph pair and run the multistart optimizer."""
    if g1.n != g2.n:
        raise SizeMismatchError("graphs have different sizes: %d vs %d"
                                % (g1.n, g2.n))
    dec1 = eigendecompose(g1)
    dec2 = eigendecompose(g2)
    for which, dec in (("first", dec1), ("second", dec2)):
        if not has_distinct_eigenvalues(dec):
            gap = minimum_eigenvalue_gap(dec)
            raise RepeatedEigenvaluesError(
                "%s graph has repeated eigenvalues (min gap %.3e)"
                % (which, gap), min_gap=gap)
    return multistart(method, dec1.vectors, dec2.vectors, config)


def verify_circulant_duality(g1: Graph, g2: Graph):
    """Residual of the circulant-pair dualness-0 certificate.

    Uses V1 = dft_matrix(n) and V2 = V1^H, checks both diagonalize their
    adjacencies, and returns ||V1 V2 - I||_F (0 for any circulant pair).
    This bypasses the distinct-eigenvalue restriction entirely.
    """
    if g1.n != g2.n:
        raise SizeMismatchError("graphs have different sizes: %d vs %d"
                                % (g1.n, g2.n))
    for which, g in (("first", g1), ("second", g2)):
        if not is_circulant(g):
            raise NotCirculantError("%s graph is not circulant" % which)
    n = g1.n
    v1 = dft_matrix(n)
    v2 = v1.conj().T
    for v, g in ((v1, g1), (v2, g2)):
        lam = v.conj().T @ g.adjacency @ v
        off = lam - np.diag(np.diagonal(lam))
        if np.max(np.abs(off)) > CIRCULANT_DIAG_TOL:
            raise NotCirculantError(
                "DFT basis fails to diagonalize a circulant adjacency "
                "(off-diagonal %.3e)" % np.max(np.abs(off)))
    return float(np.linalg.norm(v1 @ v2 - np.eye(n)))


def isomorphism_transport(solution: AlignmentSolution, p, side):
    """Transport a solution across a relabelling of one side.

    If side graph's vertices are relabelled by p (its eigenvector matrix
    becoming V[p_inverse]), the returned solution achieves the identical
    objective on the relabelled pair: the opposite-side permutation
    absorbs p.
    """
    if side not in (1, 2):
        raise ValueError("side must be 1 or 2")
    n = solution.d1.shape[0]
    p = check_permutation(p, n)
    if side == 1:
        p1 = solution.p1
        p2 = p[solution.p2]
    else:
        p1 = p[solution.p1]
        p2 = solution.p2
    return AlignmentSolution(solution.d1, solution.d2, p1, p2,
                             solution.objective, solution.dualness,
                             solution.iterations, solution.converged)
