"""Sequence-of-partitions generation.

Starting from the degree partition, refine until every cell is a singleton
or linkless.  Level selection priority: a linked singleton pivot (VERTEX),
then a set refinement that actually splits something (SET, small pivot
cells first), otherwise individualize a vertex from the smallest linked
cell (BACKTRACK).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Iterator

from .graph import DegreeTriple, Graph, available_degree_bits, iter_bits, uniform_degree
from .partition import (
    DiscardedCell,
    Partition,
    RefinementOutcome,
    _cell_has_links,
    set_refinement,
    vertex_refinement,
)


class RefinementKind(Enum):
    VERTEX = "VERTEX"
    SET = "SET"
    BACKTRACK = "BACKTRACK"


@dataclass(frozen=True)
class Level:
    """One level: its partition plus the refinement applied to leave it.

    kind/pivot fields are None at the final level; discarded holds the
    cells dropped by this level's refinement.
    """

    partition: Partition
    kind: RefinementKind | None
    pivot_index: int | None
    pivot_vertex: int | None
    discarded: tuple[DiscardedCell, ...]


@dataclass
class SequenceOfPartitions:
    graph: Graph
    levels: list[Level]
    parents: list[tuple[int, ...]]  # parents[l][j] = parent position at level l of cell j at level l+1

    def __post_init__(self):
        self._sizes: list[tuple[int, ...]] = [lv.partition.sizes() for lv in self.levels]
        self._triples: list[tuple[DegreeTriple, ...]] = [
            _cell_triples(self.graph, lv.partition) for lv in self.levels
        ]
        self._discard_profiles: list[tuple[tuple[int, int], ...]] = [
            tuple((d.position, len(d.vertices)) for d in lv.discarded) for lv in self.levels
        ]
        self._final_matrix: tuple[tuple[DegreeTriple | None, ...], ...] | None = None

    @property
    def t(self) -> int:
        """Index of the final level."""
        return len(self.levels) - 1

    def sizes(self, level: int) -> tuple[int, ...]:
        return self._sizes[level]

    def triples(self, level: int) -> tuple[DegreeTriple, ...]:
        return self._triples[level]

    def discard_profile(self, level: int) -> tuple[tuple[int, int], ...]:
        return self._discard_profiles[level]

    def final_matrix(self) -> tuple[tuple[DegreeTriple | None, ...], ...]:
        if self._final_matrix is None:
            self._final_matrix = final_cross_degrees(self, self.graph)
        return self._final_matrix

    def kinds(self) -> tuple[RefinementKind | None, ...]:
        return tuple(lv.kind for lv in self.levels)

    def with_kinds(self, new_kinds) -> "SequenceOfPartitions":
        """Copy with refinement tags replaced (used when backtracking points die)."""
        levels = [replace(lv, kind=k) for lv, k in zip(self.levels, new_kinds)]
        return SequenceOfPartitions(self.graph, levels, list(self.parents))


def _cell_triples(g: Graph, p: Partition) -> tuple[tuple[int, int, int], ...]:
    """Per-cell degree triple w.r.t. the remaining set.

    Cells of generated (and mirrored) sequences are always degree-uniform
    w.r.t. their remaining set, so one member's triple is the cell's.
    """
    m3, m2, m1, _ = g.masks
    rem = p.remaining_bits
    out = []
    for c in p.cell_bits:
        u = (c & -c).bit_length() - 1
        out.append(
            (
                (m3[u] & rem).bit_count(),
                (m2[u] & rem).bit_count(),
                (m1[u] & rem).bit_count(),
            )
        )
    return tuple(out)


def degree_partition(g: Graph) -> Partition:
    """Vertices grouped by degree triple w.r.t. V, cells in descending order."""
    if g.n == 0:
        return Partition(())
    groups: dict[DegreeTriple, int] = {}
    all_bits = g.all_bits
    for v in range(g.n):
        t = available_degree_bits(g, v, all_bits)
        groups[t] = groups.get(t, 0) | (1 << v)
    cells = [cell for _, cell in sorted(groups.items(), key=lambda kv: kv[0], reverse=True)]
    return Partition(tuple(cells))


def _is_final(g: Graph, p: Partition) -> bool:
    rem = p.remaining_bits
    return all(
        c.bit_count() == 1 or not _cell_has_links(g, c, rem) for c in p.cell_bits
    )


def _linked_cells(g: Graph, p: Partition) -> Iterator[tuple[int, int]]:
    rem = p.remaining_bits
    for pos, cell in enumerate(p.cell_bits):
        if _cell_has_links(g, cell, rem):
            yield pos, cell


def _choose_refinement(
    g: Graph, p: Partition
) -> tuple[RefinementKind, int, int | None, RefinementOutcome]:
    """Pick the next refinement: (kind, pivot_index, pivot_vertex, outcome)."""
    triples = _cell_triples(g, p)
    linked = list(_linked_cells(g, p))

    # criterion: vertex refinement with a linked singleton pivot cell
    singles = [(pos, cell) for pos, cell in linked if cell.bit_count() == 1]
    if singles:
        pos, cell = min(singles, key=lambda pc: (_neg(triples[pc[0]]), pc[0]))
        v = cell.bit_length() - 1
        return RefinementKind.VERTEX, pos, v, vertex_refinement(p, v, g)

    # criterion: a set refinement that strictly splits some cell, small pivots first
    order = sorted(linked, key=lambda pc: (pc[1].bit_count(), _neg(triples[pc[0]]), pc[0]))
    for pos, _cell in order:
        outcome = set_refinement(p, pos, g)
        if _splits(outcome):
            return RefinementKind.SET, pos, None, outcome

    # criterion: individualize from the smallest linked cell
    pos, cell = order[0]
    v = (cell & -cell).bit_length() - 1
    return RefinementKind.BACKTRACK, pos, v, vertex_refinement(p, v, g)


def _neg(t) -> tuple[int, int, int]:
    return (-t[0], -t[1], -t[2])


def _splits(outcome: RefinementOutcome) -> bool:
    parents = outcome.parents
    return any(parents[i] == parents[i + 1] for i in range(len(parents) - 1))


def generate_sequence(g: Graph) -> SequenceOfPartitions:
    """Deterministic sequence of partitions for g per the selection criteria."""
    p = degree_partition(g)
    levels: list[Level] = []
    parents: list[tuple[int, ...]] = []
    while not _is_final(g, p):
        kind, pos, v, outcome = _choose_refinement(g, p)
        levels.append(Level(p, kind, pos, v, outcome.discarded))
        parents.append(outcome.parents)
        p = outcome.partition
    levels.append(Level(p, None, None, None, ()))
    return SequenceOfPartitions(g, levels, parents)


def backtrack_amount(q: SequenceOfPartitions) -> int:
    """Number of BACKTRACK levels with index in {1,...,t-1} (level 0 excluded)."""
    return sum(
        1
        for i in range(1, q.t)
        if q.levels[i].kind is RefinementKind.BACKTRACK
    )


def final_cross_degrees(
    q: SequenceOfPartitions, g: Graph
) -> tuple[tuple[DegreeTriple | None, ...], ...]:
    """Matrix of uniform triples between final-level cell pairs (None if non-uniform)."""
    cells = q.levels[-1].partition.cell_bits
    return tuple(
        tuple(uniform_degree(g, cx, cy) if cx else None for cy in cells) for cx in cells
    )


def dump_sequence(q: SequenceOfPartitions) -> str:
    """One line per level: index, kind, pivot, cell sizes."""
    lines = []
    for i, lv in enumerate(q.levels):
        kind = lv.kind.value if lv.kind is not None else "FIN"
        pivot = ""
        if lv.pivot_index is not None:
            pivot = f" pivot_cell={lv.pivot_index}"
            if lv.pivot_vertex is not None:
                pivot += f" pivot_vertex={lv.pivot_vertex}"
        sizes = ",".join(str(s) for s in lv.partition.sizes())
        lines.append(f"level {i}: {kind}{pivot} cells=[{sizes}]")
    return "\n".join(lines) + "\n"
