"""Graph construction, permutation algebra and file round trips."""

import numpy as np
import pytest

from gftdual.errors import (DuplicateEdgeError, IndexOutOfRangeError,
                            NonPositiveWeightError, OffsetOutOfRangeError,
                            ParseError, SelfLoopError, SizeMismatchError)
from gftdual.graphs import (Graph, check_permutation, circulant, erdos_renyi,
                            invert_permutation, is_circulant, new_graph,
                            permutation_matrix, permute_graph, read_graph,
                            read_graph_file, write_graph, write_graph_file)


def test_new_graph_basic():
    g = new_graph(4, [(0, 1, 1.0), (2, 3, 0.5), (1, 3, 2.0)])
    a = g.adjacency
    assert g.n == 4
    assert g.edge_count() == 3
    assert np.array_equal(a, a.T)
    assert np.all(np.diagonal(a) == 0.0)
    assert a[0, 1] == 1.0 and a[1, 0] == 1.0
    assert a[3, 2] == 0.5
    assert not a.flags.writeable


def test_new_graph_endpoint_order_immaterial():
    g1 = new_graph(3, [(0, 2, 1.5)])
    g2 = new_graph(3, [(2, 0, 1.5)])
    assert np.array_equal(g1.adjacency, g2.adjacency)


def test_new_graph_errors():
    with pytest.raises(SelfLoopError):
        new_graph(3, [(1, 1, 1.0)])
    with pytest.raises(DuplicateEdgeError):
        new_graph(3, [(0, 1, 1.0), (1, 0, 2.0)])
    with pytest.raises(IndexOutOfRangeError):
        new_graph(3, [(0, 3, 1.0)])
    with pytest.raises(IndexOutOfRangeError):
        new_graph(3, [(-1, 2, 1.0)])
    with pytest.raises(NonPositiveWeightError):
        new_graph(3, [(0, 1, 0.0)])
    with pytest.raises(NonPositiveWeightError):
        new_graph(3, [(0, 1, -2.0)])
    with pytest.raises(IndexOutOfRangeError):
        new_graph(0, [])


def test_graph_validates_adjacency():
    with pytest.raises(SizeMismatchError):
        Graph(np.zeros((2, 3)))
    with pytest.raises(SizeMismatchError):
        Graph(np.array([[0.0, 1.0], [2.0, 0.0]]))
    with pytest.raises(SelfLoopError):
        Graph(np.array([[1.0, 0.0], [0.0, 0.0]]))
    with pytest.raises(NonPositiveWeightError):
        Graph(np.array([[0.0, -1.0], [-1.0, 0.0]]))


def test_erdos_renyi_determinism_and_extremes():
    g1 = erdos_renyi(15, 0.4, seed=5)
    g2 = erdos_renyi(15, 0.4, seed=5)
    assert np.array_equal(g1.adjacency, g2.adjacency)
    g3 = erdos_renyi(15, 0.4, seed=6)
    assert not np.array_equal(g1.adjacency, g3.adjacency)
    assert erdos_renyi(10, 0.0, seed=1).edge_count() == 0
    assert erdos_renyi(10, 1.0, seed=1).edge_count() == 45
    nz = g1.adjacency[g1.adjacency != 0.0]
    assert np.all(nz == 1.0)


def test_erdos_renyi_edge_frequency():
    total = 0
    pairs = 0
    for seed in range(200):
        g = erdos_renyi(12, 0.3, seed=seed)
        total += g.edge_count()
        pairs += 66
    rate = total / pairs
    # five sigma of a Bernoulli(0.3) mean over 13200 pairs is ~0.02
    assert abs(rate - 0.3) < 0.02


def test_circulant_structure():
    g = circulant(8, [(1, 1.0), (3, 0.25)])
    a = g.adjacency
    for i in range(8):
        assert a[i, (i + 1) % 8] == 1.0
        assert a[i, (i + 3) % 8] == 0.25
        assert a[i, (i + 2) % 8] == 0.0
    assert is_circulant(g)
    # duplicate offset: the later weight wins
    g2 = circulant(6, [(2, 1.0), (2, 3.0)])
    assert g2.adjacency[0, 2] == 3.0
    # n//2 offset on an even cycle pairs antipodal vertices once
    g3 = circulant(6, [(3, 2.0)])
    assert g3.adjacency[0, 3] == 2.0 and g3.edge_count() == 3


def test_circulant_errors():
    with pytest.raises(OffsetOutOfRangeError):
        circulant(8, [(0, 1.0)])
    with pytest.raises(OffsetOutOfRangeError):
        circulant(8, [(5, 1.0)])
    with pytest.raises(NonPositiveWeightError):
        circulant(8, [(1, 0.0)])


def test_is_circulant_negative():
    g = new_graph(4, [(0, 1, 1.0), (1, 2, 1.0)])
    assert not is_circulant(g)


def test_check_permutation():
    p = check_permutation([2, 0, 1])
    assert p.dtype == np.intp
    with pytest.raises(IndexOutOfRangeError):
        check_permutation([0, 0, 2])
    with pytest.raises(IndexOutOfRangeError):
        check_permutation([0, 1, 3])
    with pytest.raises(SizeMismatchError):
        check_permutation([0, 1], n=3)
    with pytest.raises(SizeMismatchError):
        check_permutation([[0, 1]])
    with pytest.raises(IndexOutOfRangeError):
        check_permutation([])


def test_invert_permutation():
    p = np.array([2, 0, 3, 1], dtype=np.intp)
    inv = invert_permutation(p)
    assert np.array_equal(p[inv], np.arange(4))
    assert np.array_equal(inv[p], np.arange(4))


def test_permutation_matrix_algebra():
    rng = np.random.default_rng(3)
    for _ in range(20):
        n = int(rng.integers(2, 9))
        sigma = np.array(rng.permutation(n), dtype=np.intp)
        mat = permutation_matrix(sigma)
        m = rng.normal(size=(n, n))
        assert np.array_equal(mat @ m, m[sigma])
        assert np.array_equal(m @ mat, m[:, invert_permutation(sigma)])
        assert np.array_equal(mat.T, permutation_matrix(invert_permutation(sigma)))


def test_permute_graph_relation():
    rng = np.random.default_rng(8)
    g = erdos_renyi(9, 0.5, seed=2)
    p = np.array(rng.permutation(9), dtype=np.intp)
    h = permute_graph(g, p)
    assert h.edge_count() == g.edge_count()
    for i in range(9):
        for j in range(9):
            assert h.adjacency[p[i], p[j]] == g.adjacency[i, j]


def test_write_read_round_trip():
    g = new_graph(5, [(0, 1, 1.0), (2, 4, 0.1), (1, 3, 7.25)])
    text = write_graph(g)
    back = read_graph(text)
    assert back.n == g.n
    assert np.array_equal(back.adjacency, g.adjacency)
    assert write_graph(back) == text


def test_read_graph_comments_and_blanks():
    text = "# a comment\n\n3\n# another\n0 1 2.5\n\n1 2 1.0\n"
    g = read_graph(text)
    assert g.n == 3 and g.edge_count() == 2
    assert g.adjacency[0, 1] == 2.5


def test_read_graph_errors_carry_line_numbers():
    with pytest.raises(ParseError) as info:
        read_graph("3\n0 1\n")
    assert info.value.line_number == 2
    with pytest.raises(ParseError) as info:
        read_graph("x\n")
    assert info.value.line_number == 1
    with pytest.raises(ParseError) as info:
        read_graph("3\n0 1 1.0\n0 2 oops\n")
    assert info.value.line_number == 3
    with pytest.raises(ParseError):
        read_graph("")
    with pytest.raises(ParseError):
        read_graph("0\n")
    with pytest.raises(DuplicateEdgeError):
        read_graph("3\n0 1 1.0\n1 0 1.0\n")


def test_file_round_trip(tmp_path):
    g = erdos_renyi(7, 0.6, seed=13)
    path = str(tmp_path / "g.txt")
    write_graph_file(g, path)
    back = read_graph_file(path)
    assert np.array_equal(back.adjacency, g.adjacency)
