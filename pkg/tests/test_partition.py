import pytest

from graphiso import (
    Graph,
    Partition,
    concat,
    is_equitable,
    partition_by_set,
    partition_by_vertex,
    partitions_compatible,
    set_refinement,
    vertex_refinement,
)
from graphiso.oracle import random_digraph
from graphiso.sequence import degree_partition, generate_sequence


def cells_of(p):
    return p.cells


def cycle(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def test_concat_identity_and_order():
    p = Partition.from_cells([[0], [1, 2]])
    empty = Partition(())
    assert concat(empty, p) == p
    assert concat(p, empty) == p
    q = Partition.from_cells([[3]])
    assert cells_of(concat(p, q)) == ((0,), (1, 2), (3,))


def test_concat_associative():
    a = Partition.from_cells([[0]])
    b = Partition.from_cells([[1]])
    c = Partition.from_cells([[2]])
    assert concat(concat(a, b), c) == concat(a, concat(b, c))


def test_concat_overlap_rejected():
    with pytest.raises(ValueError):
        concat(Partition.from_cells([[0]]), Partition.from_cells([[0, 1]]))


def test_partition_by_vertex_star():
    g = Graph.from_edges(4, [(0, 1), (0, 2)])  # star center 0, isolated 3
    p = partition_by_vertex([1, 2, 3], 0, g)
    assert cells_of(p) == ((1, 2), (3,))


def test_partition_by_vertex_all_nonadjacent():
    g = Graph.from_edges(4, [])
    p = partition_by_vertex([1, 2, 3], 0, g)
    assert cells_of(p) == ((1, 2, 3),)


def test_partition_by_vertex_digraph_order():
    # arcs (0,1) and (2,0): vertex 2 has code(2,0)=2 so triple (0,1,0),
    # vertex 1 has code(1,0)=1 so triple (0,0,1); descending puts {2} first
    g = Graph.from_arcs(3, [(0, 1), (2, 0)])
    p = partition_by_vertex([1, 2], 0, g)
    assert cells_of(p) == ((2,), (1,))


def test_partition_by_vertex_rejects_member_pivot():
    g = cycle(3)
    with pytest.raises(ValueError):
        partition_by_vertex([0, 1], 0, g)


def test_partition_by_set():
    g = path(3)
    assert cells_of(partition_by_set([0, 2], [1], g)) == ((0, 2),)
    g4 = path(4)
    assert cells_of(partition_by_set([0, 1], [2, 3], g4)) == ((1,), (0,))
    nolinks = Graph.from_edges(4, [(2, 3)])
    assert cells_of(partition_by_set([0, 1], [2, 3], nolinks)) == ((0, 1),)
    with pytest.raises(ValueError):
        partition_by_set([], [1], g)


def test_vertex_refinement_four_cycle():
    g = cycle(4)
    out = vertex_refinement(Partition.from_cells([[0, 1, 2, 3]]), 0, g)
    assert cells_of(out.partition) == ((1, 3), (2,))
    assert out.removed_pivot == 0
    assert out.discarded == ()


def test_vertex_refinement_lone_pivot():
    g = Graph.from_edges(1, [])
    out = vertex_refinement(Partition.from_cells([[0]]), 0, g)
    assert out.partition.cell_bits == ()
    assert out.discarded == ()
    assert out.removed_pivot == 0


def test_vertex_refinement_discards_linkless():
    g = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0)])  # C4 plus isolated 4
    out = vertex_refinement(Partition.from_cells([[0, 1, 2, 3], [4]]), 0, g)
    assert cells_of(out.partition) == ((1, 3), (2,))
    assert [(d.position, d.vertices) for d in out.discarded] == [(1, (4,))]


def test_vertex_refinement_pivot_not_member():
    g = cycle(3)
    with pytest.raises(ValueError):
        vertex_refinement(Partition.from_cells([[0, 1]]), 2, g)


def test_set_refinement_complete_graph():
    g = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    out = set_refinement(Partition.from_cells([[0, 1, 2]]), 0, g)
    assert cells_of(out.partition) == ((0, 1, 2),)


def test_set_refinement_path_no_split():
    g = path(3)
    out = set_refinement(Partition.from_cells([[1], [0, 2]]), 0, g)
    assert cells_of(out.partition) == ((1,), (0, 2))


def test_set_refinement_path4():
    g = path(4)
    out = set_refinement(Partition.from_cells([[0, 3], [1, 2]]), 0, g)
    assert cells_of(out.partition) == ((0, 3), (1, 2))
    assert out.discarded == ()


def test_set_refinement_bad_index():
    g = cycle(3)
    with pytest.raises(ValueError):
        set_refinement(Partition.from_cells([[0, 1, 2]]), 3, g)


def test_refinement_conservation():
    for seed in range(25):
        g = random_digraph(9, 0.4, seed)
        p = degree_partition(g)
        if not p.cell_bits:
            continue
        v = p.cells[0][0]
        out = vertex_refinement(p, v, g)
        got = set(out.partition.remaining)
        got |= {u for d in out.discarded for u in d.vertices}
        got.add(out.removed_pivot)
        assert got == set(p.remaining)
        assert len(out.partition.remaining) + sum(
            len(d.vertices) for d in out.discarded
        ) + 1 == len(p.remaining)


def test_refinement_order_law():
    # within every refined cell, sub-cells strictly descend by triple to pivot
    from graphiso import available_degree

    for seed in range(25):
        g = random_digraph(9, 0.5, seed + 100)
        p = degree_partition(g)
        v = p.cells[0][0]
        out = vertex_refinement(p, v, g)
        for parent in set(out.parents):
            children = [
                out.partition.cells[i]
                for i in range(len(out.parents))
                if out.parents[i] == parent
            ]
            triples = [available_degree(g, c[0], [v]) for c in children]
            assert triples == sorted(triples, reverse=True)


def test_set_refinement_idempotent_on_equitable():
    for seed in range(40):
        g = random_digraph(8, 0.5, seed)
        q = generate_sequence(g)
        for level in q.levels:
            p = level.partition
            rem = set(p.remaining)
            if not is_equitable(p, g):
                continue
            linkless_free = all(
                any(
                    True
                    for u in cell
                    for w in rem
                    if w != u and g.adj[u][w]
                )
                for cell in p.cells
            )
            if not linkless_free:
                continue
            for pivot in range(len(p.cells)):
                out = set_refinement(p, pivot, g)
                assert out.partition == p and out.discarded == ()


def test_singleton_set_pivot_matches_vertex_partition():
    for seed in range(25):
        g = random_digraph(8, 0.5, seed + 7)
        s = [1, 2, 4, 5, 7]
        by_set = partition_by_set(s, [0], g)
        by_vertex = partition_by_vertex(s, 0, g)
        assert cells_of(by_set) == cells_of(by_vertex)


def test_partitions_compatible():
    tri = cycle(3)
    p = degree_partition(tri)
    assert partitions_compatible(p, tri, p, tri)
    p3 = path(3)
    single_tri = Partition.from_cells([[0, 1, 2]])
    assert not partitions_compatible(single_tri, tri, single_tri, p3)
    c5 = cycle(5)
    c5b = Graph.from_edges(5, [(1, 2), (2, 3), (3, 4), (4, 0), (0, 1)])
    assert partitions_compatible(
        Partition.from_cells([range(5)]), c5, Partition.from_cells([range(5)]), c5b
    )


def test_is_equitable():
    g = cycle(4)
    assert is_equitable(Partition.from_cells([[0], [1], [2], [3]]), g)
    assert is_equitable(Partition.from_cells([[0, 1, 2, 3]]), g)
    assert not is_equitable(Partition.from_cells([[0, 1, 2]]), path(3))
