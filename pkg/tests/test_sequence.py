import pytest

from graphiso import (
    Graph,
    RefinementKind,
    apply_permutation,
    backtrack_amount,
    degree_partition,
    dump_sequence,
    final_cross_degrees,
    generate_sequence,
    is_equitable,
)
from graphiso.oracle import random_digraph, random_permutation
from graphiso.partition import _cell_has_links


def cycle(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def kinds_of(q):
    return [lv.kind for lv in q.levels]


def test_degree_partition_regular():
    assert degree_partition(cycle(5)).cells == (tuple(range(5)),)


def test_degree_partition_star():
    g = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    assert degree_partition(g).cells == ((0,), (1, 2, 3))


def test_degree_partition_path():
    assert degree_partition(path(3)).cells == ((1,), (0, 2))


def test_degree_partition_empty_graph():
    assert degree_partition(Graph.from_edges(0, [])).cells == ()


def test_generate_sequence_triangle_trace():
    q = generate_sequence(cycle(3))
    assert kinds_of(q) == [RefinementKind.BACKTRACK, RefinementKind.BACKTRACK, None]
    assert [lv.partition.cells for lv in q.levels] == [
        ((0, 1, 2),),
        ((1, 2),),
        ((2,),),
    ]
    assert [lv.pivot_vertex for lv in q.levels] == [0, 1, None]


def test_generate_sequence_path_trace():
    q = generate_sequence(path(3))
    assert kinds_of(q) == [RefinementKind.VERTEX, None]
    assert q.levels[0].pivot_vertex == 1
    assert q.levels[1].partition.cells == ((0, 2),)
    # final cell is linkless, satisfying the stop condition despite size 2
    assert not _cell_has_links(
        path(3), q.levels[1].partition.cell_bits[0], q.levels[1].partition.remaining_bits
    )


def test_generate_sequence_single_vertex():
    q = generate_sequence(Graph.from_edges(1, []))
    assert len(q.levels) == 1 and q.t == 0
    assert q.levels[0].partition.cells == ((0,),)


def test_backtrack_amount_counts_from_level_one():
    assert backtrack_amount(generate_sequence(cycle(3))) == 1  # level 0 excluded
    assert backtrack_amount(generate_sequence(cycle(4))) == 0
    assert backtrack_amount(generate_sequence(path(3))) == 0


def test_final_cross_degrees():
    q = generate_sequence(Graph.from_edges(1, []))
    assert final_cross_degrees(q, q.graph) == (((0, 0, 0),),)
    k2 = Graph.from_edges(2, [(0, 1)])
    qk = generate_sequence(k2)
    # trace: BACKTRACK on {0,1} with pivot 0 leaves final ({1},)
    assert qk.levels[-1].partition.cells == ((1,),)
    g = Graph.from_edges(4, [(0, 1)])  # plus two isolated vertices
    qg = generate_sequence(g)
    matrix = final_cross_degrees(qg, g)
    flat = [t for row in matrix for t in row]
    assert all(t == (0, 0, 0) for t in flat)


def test_sequences_deterministic():
    for seed in range(10):
        g = random_digraph(12, 0.4, seed)
        q1 = generate_sequence(g)
        q2 = generate_sequence(g)
        assert kinds_of(q1) == kinds_of(q2)
        assert [lv.partition for lv in q1.levels] == [lv.partition for lv in q2.levels]
        assert [lv.pivot_vertex for lv in q1.levels] == [lv.pivot_vertex for lv in q2.levels]


def test_final_level_condition():
    for seed in range(40):
        g = random_digraph(11, 0.45, seed)
        q = generate_sequence(g)
        final = q.levels[-1].partition
        rem = final.remaining_bits
        for cell in final.cell_bits:
            assert cell.bit_count() == 1 or not _cell_has_links(g, cell, rem)


def test_backtrack_levels_equitable():
    for seed in range(40):
        g = random_digraph(14, 0.5, seed + 77)
        q = generate_sequence(g)
        for lv in q.levels:
            if lv.kind is RefinementKind.BACKTRACK:
                assert is_equitable(lv.partition, g)


def test_pivot_cells_always_linked():
    for seed in range(40):
        g = random_digraph(12, 0.4, seed + 200)
        q = generate_sequence(g)
        for lv in q.levels[:-1]:
            cell = lv.partition.cell_bits[lv.pivot_index]
            assert _cell_has_links(g, cell, lv.partition.remaining_bits)


def test_vertex_levels_have_singleton_pivots():
    for seed in range(30):
        g = random_digraph(12, 0.5, seed + 300)
        q = generate_sequence(g)
        for lv in q.levels[:-1]:
            size = lv.partition.cell_bits[lv.pivot_index].bit_count()
            if lv.kind is RefinementKind.VERTEX:
                assert size == 1
            elif lv.kind is RefinementKind.BACKTRACK:
                assert size >= 2


def test_shape_invariant_under_relabeling():
    for seed in range(25):
        g = random_digraph(10, 0.45, seed)
        f = random_permutation(10, seed + 500)
        h = apply_permutation(g, f)
        qg, qh = generate_sequence(g), generate_sequence(h)
        assert len(qg.levels) == len(qh.levels)
        assert kinds_of(qg) == kinds_of(qh)
        assert [lv.pivot_index for lv in qg.levels] == [lv.pivot_index for lv in qh.levels]
        for a, b in zip(qg.levels, qh.levels):
            assert a.partition.sizes() == b.partition.sizes()
            pa = None if a.pivot_index is None else a.partition.cell_bits[a.pivot_index].bit_count()
            pb = None if b.pivot_index is None else b.partition.cell_bits[b.pivot_index].bit_count()
            assert pa == pb


def test_cells_uniform_toward_remaining():
    # every cell of every generated level is degree-uniform w.r.t. remaining
    from graphiso import uniform_degree

    for seed in range(30):
        g = random_digraph(10, 0.5, seed + 900)
        q = generate_sequence(g)
        for lv in q.levels:
            rem = lv.partition.remaining_bits
            for cell in lv.partition.cell_bits:
                assert uniform_degree(g, cell, rem) is not None


def test_dump_sequence_format():
    text = dump_sequence(generate_sequence(cycle(3)))
    lines = text.strip().splitlines()
    assert lines[0].startswith("level 0: BACKTRACK")
    assert lines[-1].startswith("level 2: FIN")
