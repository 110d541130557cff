"""Undirected weighted graphs and their constructors.

A graph on n vertices is stored as a dense symmetric adjacency matrix with
an exactly zero diagonal and non-negative weights. Graphs are immutable
after construction: the adjacency array is copied and marked read-only.

File format
-----------
Line 1 holds the vertex count N. Each following non-empty line is
``i j w`` with 0-indexed endpoints and a positive weight. Lines starting
with ``#`` are comments. The writer emits edges sorted by (i, j) with
shortest round-trip decimal weights, so write(read(s)) is a canonical form.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DuplicateEdgeError,
    IndexOutOfRangeError,
    NonPositiveWeightError,
    OffsetOutOfRangeError,
    ParseError,
    SelfLoopError,
    SizeMismatchError,
)
from .rng import SplitMix64


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable undirected weighted graph.

    Attributes
    ----------
    adjacency:
        (n, n) float array; symmetric, zero diagonal, entries >= 0.
    """

    adjacency: np.ndarray

    def __post_init__(self):
        a = np.array(self.adjacency, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise SizeMismatchError("adjacency must be a square matrix")
        if not np.all(np.isfinite(a)):
            raise NonPositiveWeightError("adjacency entries must be finite")
        if not np.array_equal(a, a.T):
            raise SizeMismatchError("adjacency must be exactly symmetric")
        if np.any(np.diagonal(a) != 0.0):
            raise SelfLoopError("adjacency diagonal must be exactly zero")
        if np.any(a < 0.0):
            raise NonPositiveWeightError("adjacency entries must be >= 0")
        a.flags.writeable = False
        object.__setattr__(self, "adjacency", a)

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]

    def edge_count(self) -> int:
        """Number of unordered weighted edges."""
        return int(np.count_nonzero(np.triu(self.adjacency, k=1)))


def new_graph(n: int, edges) -> Graph:
    """Build a graph from an edge list.

    Parameters
    ----------
    n:
        Vertex count, n >= 1.
    edges:
        Iterable of (i, j, w) with 0 <= i, j < n, i != j and w > 0.
        Endpoint order is immaterial; a pair may appear at most once.
    """
    if n < 1:
        raise IndexOutOfRangeError(f"vertex count must be >= 1, got {n}")
    a = np.zeros((n, n))
    seen: set[tuple[int, int]] = set()
    for i, j, w in edges:
        i, j = int(i), int(j)
        if not (0 <= i < n and 0 <= j < n):
            raise IndexOutOfRangeError(f"edge ({i}, {j}) outside 0..{n - 1}")
        if i == j:
            raise SelfLoopError(f"self loop at vertex {i}")
        if not (float(w) > 0.0):
            raise NonPositiveWeightError(f"edge ({i}, {j}) has weight {w}")
        key = (min(i, j), max(i, j))
        if key in seen:
            raise DuplicateEdgeError(f"duplicate edge {key}")
        seen.add(key)
        a[i, j] = float(w)
        a[j, i] = float(w)
    return Graph(a)


def erdos_renyi(n: int, p: float, seed: int) -> Graph:
    """G(n, p) sample with unit weights.

    The pair (i, j) with i < j receives one uniform draw in row-major
    order (i ascending, then j); the edge is present when the draw is < p.
    Identical seeds give identical graphs on every platform.
    """
    if n < 1:
        raise IndexOutOfRangeError(f"vertex count must be >= 1, got {n}")
    if not (0.0 <= p <= 1.0):
        raise NonPositiveWeightError(f"edge probability must be in [0, 1], got {p}")
    rng = SplitMix64(seed)
    a = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                a[i, j] = 1.0
                a[j, i] = 1.0
    return Graph(a)


def circulant(n: int, offsets) -> Graph:
    """Circulant graph: vertex i is joined to i +- k (mod n) with weight w.

    ``offsets`` is an iterable of (k, w) with 1 <= k <= n//2 and w > 0.
    A repeated offset overwrites the earlier weight.
    """
    if n < 1:
        raise IndexOutOfRangeError(f"vertex count must be >= 1, got {n}")
    a = np.zeros((n, n))
    for k, w in offsets:
        k = int(k)
        if not (1 <= k <= n // 2):
            raise OffsetOutOfRangeError(f"offset {k} outside 1..{n // 2}")
        if not (float(w) > 0.0):
            raise NonPositiveWeightError(f"offset {k} has weight {w}")
        for i in range(n):
            j = (i + k) % n
            a[i, j] = float(w)
            a[j, i] = float(w)
    return Graph(a)


def is_circulant(graph: Graph) -> bool:
    """True when adjacency[i][j] depends only on (j - i) mod n (exactly)."""
    a = graph.adjacency
    n = graph.n
    first = a[0]
    for i in range(1, n):
        if not np.array_equal(a[i], np.roll(first, i)):
            return False
    return True


# ------------------------------------------------------------ permutations


def check_permutation(perm, n: int | None = None) -> np.ndarray:
    """Validate and return a permutation of 0..len-1 as an intp array."""
    p = np.asarray(perm, dtype=np.intp)
    if p.ndim != 1:
        raise SizeMismatchError("permutation must be one-dimensional")
    if n is not None and p.shape[0] != n:
        raise SizeMismatchError(f"permutation length {p.shape[0]} != {n}")
    m = p.shape[0]
    if m == 0 or not np.array_equal(np.sort(p), np.arange(m)):
        raise IndexOutOfRangeError("not a bijection of 0..n-1")
    return p


def invert_permutation(perm) -> np.ndarray:
    """Inverse permutation: out[perm[i]] = i."""
    p = check_permutation(perm)
    inv = np.empty_like(p)
    inv[p] = np.arange(p.shape[0], dtype=np.intp)
    return inv


def permutation_matrix(perm) -> np.ndarray:
    """Matrix P with P[i, perm[i]] = 1, so P @ M gathers rows: M[perm]."""
    p = check_permutation(perm)
    n = p.shape[0]
    mat = np.zeros((n, n))
    mat[np.arange(n), p] = 1.0
    return mat


def permute_graph(graph: Graph, perm) -> Graph:
    """Relabel vertices: vertex i becomes perm[i].

    The result satisfies adjacency'[perm[i], perm[j]] == adjacency[i, j].
    """
    p = check_permutation(perm, graph.n)
    inv = invert_permutation(p)
    return Graph(graph.adjacency[np.ix_(inv, inv)])


# ---------------------------------------------------------------- file io


def write_graph(graph: Graph) -> str:
    """Serialize to the text format (canonical: edges sorted by (i, j))."""
    lines = [str(graph.n)]
    a = graph.adjacency
    for i in range(graph.n):
        for j in range(i + 1, graph.n):
            if a[i, j] != 0.0:
                lines.append(f"{i} {j} {float(a[i, j])!r}")
    return "\n".join(lines) + "\n"


def read_graph(text: str) -> Graph:
    """Parse the text format. Raises ParseError with the offending line."""
    n = None
    edges = []
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if n is None:
            if len(tokens) != 1:
                raise ParseError("expected a single vertex count", line_number)
            try:
                n = int(tokens[0])
            except ValueError:
                raise ParseError(f"bad vertex count {tokens[0]!r}", line_number) from None
            if n < 1:
                raise ParseError(f"vertex count must be >= 1, got {n}", line_number)
            continue
        if len(tokens) != 3:
            raise ParseError("expected 'i j w'", line_number)
        try:
            i, j = int(tokens[0]), int(tokens[1])
            w = float(tokens[2])
        except ValueError:
            raise ParseError(f"bad edge line {line!r}", line_number) from None
        edges.append((i, j, w, line_number))
    if n is None:
        raise ParseError("missing vertex count", 1)
    # Semantic validation (ranges, loops, duplicates, weights) is new_graph's.
    return new_graph(n, [(i, j, w) for i, j, w, _ in edges])


def read_graph_file(path: str) -> Graph:
    with open(path, "r", encoding="utf-8") as handle:
        return read_graph(handle.read())


def write_graph_file(graph: Graph, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(write_graph(graph))
