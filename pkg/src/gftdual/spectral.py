"""Adjacency eigendecompositions and the graph Fourier transform.

The eigensolver is a cyclic Jacobi rotation sweep on the dense symmetric
matrix. It is dependency-free, accurate at the sizes this library targets
(n up to ~100) and fully deterministic: two calls on the same matrix return
bit-identical output.

Column convention: eigenvalues ascending; each eigenvector is scaled so its
largest-magnitude entry is positive, ties broken by the lowest row index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceFailure, NotSquareError, SizeMismatchError
from .graphs import Graph

_MAX_SWEEPS = 100
_OFF_DIAGONAL_TOL = 1e-12  # relative to the Frobenius norm of the input


def _off_diagonal_norm(a: np.ndarray) -> float:
    off = a.copy()
    np.fill_diagonal(off, 0.0)
    return float(np.linalg.norm(off))


def jacobi_eigh(matrix: np.ndarray, warm_start: np.ndarray | None = None):
    """Eigenpairs of a dense symmetric matrix by cyclic Jacobi rotations.

    Parameters
    ----------
    matrix:
        Symmetric (n, n) array. Not modified.
    warm_start:
        Optional orthogonal matrix Q close to an eigenbasis; the sweep then
        runs on Q.T @ matrix @ Q, which converges in very few rotations when
        Q came from a nearby matrix. The result is still exact for `matrix`.

    Returns
    -------
    (eigenvalues, vectors):
        Eigenvalues ascending; vectors[:, k] belongs to eigenvalues[k].
        No sign normalization is applied here.
    """
    a = np.asarray(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotSquareError("jacobi_eigh needs a square matrix")
    n = a.shape[0]
    scale = float(np.linalg.norm(a))
    threshold = _OFF_DIAGONAL_TOL * scale
    if warm_start is None:
        m = a.copy()
        v = np.eye(n)
    else:
        v = np.array(warm_start, dtype=float)
        m = v.T @ a @ v
        m = 0.5 * (m + m.T)
    # Entries at or below skip_tol cannot push the off-diagonal norm past
    # the threshold even if all n^2 of them survive.
    skip_tol = threshold / max(1, 4 * n)
    converged = _off_diagonal_norm(m) <= threshold
    for _ in range(_MAX_SWEEPS):
        if converged:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = m[p, q]
                if abs(apq) <= skip_tol:
                    continue
                tau = (m[q, q] - m[p, p]) / (2.0 * apq)
                if abs(tau) > 1e150:
                    t = 1.0 / (2.0 * tau)
                else:
                    t = math.copysign(1.0, tau) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                col_p = m[:, p].copy()
                col_q = m[:, q].copy()
                m[:, p] = c * col_p - s * col_q
                m[:, q] = s * col_p + c * col_q
                row_p = m[p, :].copy()
                row_q = m[q, :].copy()
                m[p, :] = c * row_p - s * row_q
                m[q, :] = s * row_p + c * row_q
                m[p, q] = 0.0
                m[q, p] = 0.0
                vec_p = v[:, p].copy()
                vec_q = v[:, q].copy()
                v[:, p] = c * vec_p - s * vec_q
                v[:, q] = s * vec_p + c * vec_q
        converged = _off_diagonal_norm(m) <= threshold
    if not converged:
        raise ConvergenceFailure(
            f"Jacobi sweep did not reach {threshold:.3e} in {_MAX_SWEEPS} sweeps"
        )
    eigenvalues = np.diagonal(m).copy()
    order = np.argsort(eigenvalues, kind="stable")
    return eigenvalues[order], v[:, order]


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """Adjacency eigendecomposition A = V diag(eigenvalues) V^T."""

    eigenvalues: np.ndarray
    vectors: np.ndarray

    def __post_init__(self):
        w = np.array(self.eigenvalues, dtype=float)
        v = np.array(self.vectors, dtype=float)
        if v.ndim != 2 or v.shape[0] != v.shape[1] or w.shape != (v.shape[0],):
            raise SizeMismatchError("eigenvalues and vectors shapes disagree")
        w.flags.writeable = False
        v.flags.writeable = False
        object.__setattr__(self, "eigenvalues", w)
        object.__setattr__(self, "vectors", v)

    @property
    def n(self) -> int:
        return self.vectors.shape[0]


def eigendecompose(graph: Graph) -> SpectralDecomposition:
    """Eigendecomposition of the adjacency matrix with fixed conventions.

    Eigenvalues ascending; each eigenvector column is flipped, if needed,
    so that its largest-magnitude entry (lowest row index on ties) is
    positive. Deterministic: repeat calls are bit-identical.
    """
    w, v = jacobi_eigh(graph.adjacency)
    for k in range(v.shape[1]):
        column = v[:, k]
        lead = int(np.argmax(np.abs(column)))
        if column[lead] < 0.0:
            v[:, k] = -column
    return SpectralDecomposition(w, v)


def has_distinct_eigenvalues(decomposition: SpectralDecomposition, tol: float = 1e-8) -> bool:
    """True when all consecutive eigenvalue gaps clear a relative threshold."""
    return minimum_eigenvalue_gap(decomposition) > tol * _gap_scale(decomposition)


def minimum_eigenvalue_gap(decomposition: SpectralDecomposition) -> float:
    """Smallest consecutive gap of the ascending spectrum (inf for n = 1)."""
    w = decomposition.eigenvalues
    if w.shape[0] < 2:
        return math.inf
    return float(np.min(np.diff(w)))


def _gap_scale(decomposition: SpectralDecomposition) -> float:
    w = decomposition.eigenvalues
    if w.shape[0] == 0:
        return 1.0
    return max(1.0, float(np.max(np.abs(w))))


def gft(decomposition: SpectralDecomposition, signal: np.ndarray) -> np.ndarray:
    """Graph Fourier transform V^T x of a vertex signal."""
    x = np.asarray(signal)
    if x.shape != (decomposition.n,):
        raise SizeMismatchError(f"signal length {x.shape} != ({decomposition.n},)")
    return decomposition.vectors.T @ x


def igft(decomposition: SpectralDecomposition, spectrum: np.ndarray) -> np.ndarray:
    """Inverse transform V x_hat back to the vertex domain."""
    x = np.asarray(spectrum)
    if x.shape != (decomposition.n,):
        raise SizeMismatchError(f"spectrum length {x.shape} != ({decomposition.n},)")
    return decomposition.vectors @ x


def dft_matrix(n: int) -> np.ndarray:
    """Unitary DFT matrix U[j, k] = exp(-2 pi i j k / n) / sqrt(n)."""
    if n < 1:
        raise SizeMismatchError(f"n must be >= 1, got {n}")
    indices = np.arange(n)
    return np.exp(-2j * np.pi * np.outer(indices, indices) / n) / math.sqrt(n)
