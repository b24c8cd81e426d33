import io
import itertools

import pytest
from hypothesis import given, settings, strategies as st

from conftest import complete_graph
from rainbowgraph.graph import (
    ColoredGraph, DisjointSet, Graph, InputError, complement_pairs, complement_size,
    components, difference, dumps, is_connected, is_rainbow, loads, read_edge_list, union,
)


@st.composite
def small_graphs(draw, max_n=9):
    n = draw(st.integers(1, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(n, chosen)


def test_union_closes_triangle():
    g = union(Graph(3, [(0, 1), (1, 2)]), [(2, 0)])
    assert g.edge_set == {(0, 1), (1, 2), (0, 2)}


def test_union_with_nothing_is_identity():
    g = complete_graph(4)
    assert union(g, []) == g
    assert list(g.degrees) == [3, 3, 3, 3]


def test_union_rejects_out_of_range():
    with pytest.raises(InputError):
        union(Graph(3), [(0, 3)])


def test_graph_rejects_loops():
    with pytest.raises(InputError):
        Graph(3, [(1, 1)])


def test_duplicate_input_edges_collapse():
    g = Graph(3, [(0, 1), (1, 0), (0, 1)])
    assert g.num_edges == 1


def test_complement_examples():
    assert complement_pairs(complete_graph(4)) == []
    assert complement_pairs(Graph(3)) == [(0, 1), (0, 2), (1, 2)]
    c5 = Graph(5, [(i, (i + 1) % 5) for i in range(5)])
    chords = [(a, b) for a, b in itertools.combinations(range(5), 2) if (b - a) % 5 in (2, 3)]
    assert complement_pairs(c5) == chords
    assert complement_size(c5) == 5


def test_is_rainbow():
    cg = ColoredGraph(Graph(3, [(0, 1), (1, 2), (0, 2)]), {(0, 1): 1, (1, 2): 2, (0, 2): 1}, 2)
    assert is_rainbow(cg, [(0, 1), (1, 2)])
    assert not is_rainbow(cg, [(0, 1), (0, 2)])
    assert is_rainbow(cg, [])
    with pytest.raises(InputError):
        is_rainbow(cg, [(0, 3)])


def test_coloring_validation():
    g = Graph(3, [(0, 1), (1, 2)])
    with pytest.raises(InputError):
        ColoredGraph(g, [1, 3], 2)
    with pytest.raises(InputError):
        ColoredGraph(g, [0, 1], 2)
    with pytest.raises(InputError):
        ColoredGraph(g, {(0, 1): 1}, 2)
    cg = ColoredGraph(g, {(2, 1): 2, (1, 0): 1}, 2)
    assert cg.color(1, 2) == 2 and cg.color(1, 0) == 1


def test_restrict_rejects_foreign_edges():
    cg = ColoredGraph(Graph(3, [(0, 1), (1, 2)]), [1, 2], 2)
    assert cg.restrict(Graph(3, [(1, 2)])).color(1, 2) == 2
    with pytest.raises(InputError):
        cg.restrict(Graph(3, [(0, 2)]))


def test_components_and_disjoint_set():
    g = Graph(6, [(0, 1), (1, 2), (3, 4)])
    assert components(g) == [[0, 1, 2], [3, 4], [5]]
    assert not is_connected(g)
    assert is_connected(complete_graph(3))
    ds = DisjointSet(4)
    assert ds.union(0, 1) and ds.union(2, 3) and not ds.union(1, 0)
    assert ds.find(0) == ds.find(1) != ds.find(2)


def test_text_round_trip_colored():
    cg = ColoredGraph(Graph(4, [(0, 1), (2, 3), (1, 3)]), [3, 1, 2], 3)
    back = loads(dumps(cg))
    assert isinstance(back, ColoredGraph)
    assert back.graph == cg.graph and back.coloring == cg.coloring and back.r == 3


def test_text_round_trip_plain():
    g = Graph(5, [(0, 4), (1, 2)])
    back = loads(dumps(g))
    assert isinstance(back, Graph) and back == g


@pytest.mark.parametrize("text", [
    "", "3\n", "3 1\n0 1\n", "3 1\n0 x 1\n", "3 1\n0 1 1\n1 0 1\n", "3 0\n0 1 2\n",
    "3 2\n0 5 1\n", "3 2\n0 1 3\n",
])
def test_malformed_files(text):
    with pytest.raises(InputError):
        loads(text)


def test_read_edge_list_keeps_order():
    n, edges = read_edge_list(io.StringIO("5 0\n3 4 0\n0 1 0\n1 0 0\n2 1 0\n"))
    assert n == 5 and edges == [(3, 4), (0, 1), (1, 2)]


@settings(max_examples=60, deadline=None)
@given(small_graphs(), small_graphs())
def test_union_difference_complement_laws(g, other):
    n = g.n
    extra = [e for e in other.edges if max(e) < n]
    u = union(g, extra)
    assert g.edge_set <= u.edge_set
    assert u.num_edges <= n * (n - 1) // 2
    full = union(g, complement_pairs(g))
    assert complement_pairs(full) == []
    assert full.num_edges == n * (n - 1) // 2
    assert difference(u, g).edge_set == set(extra) - g.edge_set


@settings(max_examples=60, deadline=None)
@given(small_graphs())
def test_adjacency_is_consistent(g):
    for u, v in g.edges:
        assert u < v and v in g.adj_sets[u] and u in g.adj_sets[v]
        assert g.has_edge(v, u)
    assert sum(g.degrees) == 2 * g.num_edges
    indptr, indices, arc_edge = g.csr
    for v in range(g.n):
        for j in range(indptr[v], indptr[v + 1]):
            a, b = g.edges[arc_edge[j]]
            assert {a, b} == {v, int(indices[j])}


@settings(max_examples=60, deadline=None)
@given(small_graphs(), st.integers(1, 4), st.randoms(use_true_random=False))
def test_rainbow_is_monotone_under_subsets(g, r, rnd):
    cg = ColoredGraph(g, [rnd.randint(1, r) for _ in range(g.num_edges)], r)
    edges = list(g.edges)
    for k in range(len(edges) + 1):
        sub = edges[:k]
        if is_rainbow(cg, sub):
            assert all(is_rainbow(cg, sub[:j]) for j in range(k))
