import numpy as np
import pytest

from graphiso import (
    Code,
    DegreeTriple,
    Graph,
    GraphFormatError,
    adjacency_code,
    apply_permutation,
    available_degree,
    has_links,
    induced_subgraph,
    is_isomorphism,
    load_graph,
    save_graph,
    uniform_degree,
)
from graphiso.oracle import random_digraph, random_permutation

from corpus import all_digraphs


def cycle(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def test_adjacency_code_single_arc():
    g = Graph.from_arcs(2, [(0, 1)])
    assert adjacency_code(g, 0, 1) == Code.OUT == 2
    assert adjacency_code(g, 1, 0) == Code.IN == 1


def test_adjacency_code_reciprocal_arcs():
    g = Graph.from_arcs(2, [(0, 1), (1, 0)])
    assert adjacency_code(g, 0, 1) == 3


def test_adjacency_code_empty():
    g = Graph.from_arcs(2, [])
    assert adjacency_code(g, 0, 1) == 0


def test_adjacency_code_errors():
    g = Graph.from_arcs(3, [(0, 1)])
    with pytest.raises(ValueError):
        adjacency_code(g, 0, 0)
    with pytest.raises(ValueError):
        adjacency_code(g, 0, 5)


def test_code_inverse():
    assert Code.NONE.inverse == Code.NONE
    assert Code.IN.inverse == Code.OUT
    assert Code.OUT.inverse == Code.IN
    assert Code.BOTH.inverse == Code.BOTH


def test_code_symmetry_validated():
    bad = np.zeros((2, 2), dtype=np.uint8)
    bad[0, 1] = 2  # missing reverse code 1
    with pytest.raises(ValueError):
        Graph(bad)
    with pytest.raises(ValueError):
        Graph(np.array([[1]], dtype=np.uint8))  # diagonal


def test_available_degree_empty_set():
    g = cycle(4)
    assert available_degree(g, 0, []) == (0, 0, 0)


def test_available_degree_triangle():
    g = cycle(3)
    assert available_degree(g, 0, [1, 2]) == DegreeTriple(2, 0, 0)


def test_available_degree_single_arc():
    g = Graph.from_arcs(2, [(0, 1)])
    assert available_degree(g, 0, [1]) == (0, 1, 0)
    assert available_degree(g, 1, [0]) == (0, 0, 1)


def test_available_degree_additive_over_disjoint_sets():
    for seed in range(20):
        g = random_digraph(9, 0.5, seed)
        s1 = [v for v in range(9) if v % 3 == 0]
        s2 = [v for v in range(9) if v % 3 == 1]
        for v in range(9):
            a = available_degree(g, v, s1)
            b = available_degree(g, v, s2)
            both = available_degree(g, v, s1 + s2)
            assert both == (a[0] + b[0], a[1] + b[1], a[2] + b[2])


def test_has_links():
    g = Graph.from_edges(4, [(0, 1), (1, 2)])  # 3 isolated
    assert not has_links(g, 3, [0, 1, 2])
    assert has_links(g, 0, [1])
    arc = Graph.from_arcs(2, [(0, 1)])
    assert has_links(arc, 0, [1])


def test_uniform_degree():
    g = cycle(4)
    assert uniform_degree(g, [0, 2], [1, 3]) == (2, 0, 0)
    assert uniform_degree(g, [0], [1, 3]) == available_degree(g, 0, [1, 3])
    p = path(3)
    assert uniform_degree(p, [0, 1], [0, 1, 2]) is None
    with pytest.raises(ValueError):
        uniform_degree(g, [], [1])


def test_induced_subgraph():
    g = cycle(3)
    sub, index_map = induced_subgraph(g, [0, 1, 2])
    assert sub == g and index_map == {0: 0, 1: 1, 2: 2}
    sub, _ = induced_subgraph(g, [0, 1])
    assert sub == Graph.from_edges(2, [(0, 1)])
    sub, _ = induced_subgraph(cycle(4), [0, 2])
    assert sub.arc_count() == 0


def test_induced_subgraph_degree_agreement():
    for seed in range(10):
        g = random_digraph(8, 0.5, seed)
        keep = [0, 2, 3, 6, 7]
        sub, index_map = induced_subgraph(g, keep)
        for v in keep:
            old = available_degree(g, v, [u for u in keep if u != v])
            new = available_degree(sub, index_map[v], [index_map[u] for u in keep if u != v])
            assert old == new


def test_apply_permutation():
    g = Graph.from_arcs(2, [(0, 1)])
    assert apply_permutation(g, [0, 1]) == g
    swapped = apply_permutation(g, [1, 0])
    assert adjacency_code(swapped, 1, 0) == 2
    tri = cycle(3)
    assert apply_permutation(tri, [2, 0, 1]) == tri
    with pytest.raises(ValueError):
        apply_permutation(g, [0, 0])


def test_is_isomorphism():
    tri = cycle(3)
    assert is_isomorphism(tri, tri, [0, 1, 2])
    c5 = cycle(5)
    rot = apply_permutation(c5, [1, 2, 3, 4, 0])
    assert is_isomorphism(c5, rot, [1, 2, 3, 4, 0])
    assert not is_isomorphism(path(3), tri, [0, 1, 2])
    assert not is_isomorphism(tri, cycle(4), [0, 1, 2])  # size mismatch is False


def test_is_isomorphism_after_permutation_property():
    for seed in range(30):
        g = random_digraph(7, 0.4, seed)
        f = random_permutation(7, seed + 1000)
        assert is_isomorphism(g, apply_permutation(g, f), f)


def test_inverse_code_property():
    for g in all_digraphs(3):
        for u in range(3):
            for v in range(3):
                if u != v:
                    assert adjacency_code(g, u, v) == adjacency_code(g, v, u).inverse


def test_load_minimal():
    g = load_graph("p edge 1 0\n")
    assert g.n == 1 and g.arc_count() == 0


def test_load_edge_line():
    g = load_graph("p edge 2 1\ne 1 2\n")
    assert g.adj[0][1] == 3 and g.adj[1][0] == 3


def test_load_arc_format():
    g = load_graph("p arc 3 3\na 1 2\na 2 1\na 1 3\n")
    assert adjacency_code(g, 0, 1) == 3
    assert adjacency_code(g, 0, 2) == 2


def test_load_comments_ignored():
    g = load_graph("c header comment\np edge 2 1\nc mid\ne 1 2\n")
    assert g.arc_count() == 2


def test_roundtrip_random():
    for seed in range(15):
        g = random_digraph(9, 0.4, seed)
        assert load_graph(save_graph(g)) == g
    und = Graph.from_edges(5, [(0, 1), (2, 4)])
    assert load_graph(save_graph(und)) == und
    assert save_graph(und).startswith("p edge 5 2")


def test_parse_errors_carry_line_numbers():
    with pytest.raises(GraphFormatError) as err:
        load_graph("p edge 2 1\ne 1 3\n")
    assert err.value.line == 2
    with pytest.raises(GraphFormatError) as err:
        load_graph("p edge 2 1\ne 1 1\n")  # self-loop
    assert err.value.line == 2
    with pytest.raises(GraphFormatError) as err:
        load_graph("p banana 2 1\n")
    assert err.value.line == 1
    with pytest.raises(GraphFormatError):
        load_graph("e 1 2\n")  # line before header
    with pytest.raises(GraphFormatError):
        load_graph("p edge 2 1\na 1 2\n")  # arc line in edge file
