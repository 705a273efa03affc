"""Ordered partitions of vertex sets and the refinement primitives.

Cells are kept as int bitmasks; order is significant.  Splitting a cell
always orders the produced sub-cells by strictly descending degree triple
toward the pivot, and linkless cells are dropped into the refinement
outcome's discard list.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .graph import (
    DegreeTriple,
    Graph,
    available_degree_bits,
    bits_from,
    bits_tuple,
    iter_bits,
    uniform_degree,
)


@dataclass(frozen=True)
class Partition:
    """Ordered sequence of disjoint non-empty vertex cells."""

    cell_bits: tuple[int, ...]

    @classmethod
    def from_cells(cls, cells: Iterable[Iterable[int]]) -> "Partition":
        masks = []
        seen = 0
        for cell in cells:
            mask = cell if isinstance(cell, int) else bits_from(cell)
            if mask == 0:
                raise ValueError("partitions may not contain empty cells")
            if mask & seen:
                raise ValueError("partition cells must be disjoint")
            seen |= mask
            masks.append(mask)
        return cls(tuple(masks))

    @property
    def remaining_bits(self) -> int:
        mask = 0
        for cell in self.cell_bits:
            mask |= cell
        return mask

    @property
    def cells(self) -> tuple[tuple[int, ...], ...]:
        return tuple(bits_tuple(c) for c in self.cell_bits)

    @property
    def remaining(self) -> tuple[int, ...]:
        return bits_tuple(self.remaining_bits)

    def sizes(self) -> tuple[int, ...]:
        return tuple(c.bit_count() for c in self.cell_bits)

    def __len__(self) -> int:
        return len(self.cell_bits)

    def __bool__(self) -> bool:
        return bool(self.cell_bits)


EMPTY_PARTITION = Partition(())


class DiscardedCell(NamedTuple):
    """A linkless cell removed by a refinement, with its pre-refinement position."""

    position: int
    vertices: tuple[int, ...]


@dataclass(frozen=True)
class RefinementOutcome:
    partition: Partition
    discarded: tuple[DiscardedCell, ...]
    removed_pivot: int | None
    # for each new cell, the position of its parent cell in the refined partition
    parents: tuple[int, ...]


def concat(p: Partition, q: Partition) -> Partition:
    """Cells of p followed by cells of q; underlying sets must be disjoint."""
    if p.remaining_bits & q.remaining_bits:
        raise ValueError("concatenation requires disjoint underlying sets")
    return Partition(p.cell_bits + q.cell_bits)


def _split_by_vertex(g: Graph, s_bits: int, v: int) -> list[int]:
    """Sub-cells of s grouped by adjacency code to v, descending triple order.

    The triple of u w.r.t. {v} is (1,0,0), (0,1,0), (0,0,1) or (0,0,0)
    according to code(u,v) = 3, 2, 1, 0, so descending order is
    code 3, then 2, then 1, then 0.  code(u,v) = inverse(code(v,u)) maps
    the groups onto v's row masks.
    """
    m3, m2, m1, _ = g.masks
    c3 = s_bits & m3[v]
    c2 = s_bits & m1[v]
    c1 = s_bits & m2[v]
    c0 = s_bits & ~(c3 | c2 | c1)
    return [c for c in (c3, c2, c1, c0) if c]


def _split_by_set(g: Graph, s_bits: int, p_bits: int) -> list[tuple[tuple[int, int, int], int]]:
    """(triple, sub-cell) pairs grouped by triple toward p, descending."""
    m3, m2, m1, _ = g.masks
    groups: dict[tuple[int, int, int], int] = {}
    bits = s_bits
    while bits:
        low = bits & -bits
        bits ^= low
        u = low.bit_length() - 1
        t = (
            (m3[u] & p_bits).bit_count(),
            (m2[u] & p_bits).bit_count(),
            (m1[u] & p_bits).bit_count(),
        )
        groups[t] = groups.get(t, 0) | low
    if len(groups) == 1:
        return list(groups.items())
    return sorted(groups.items(), key=lambda item: item[0], reverse=True)


def partition_by_vertex(s: Iterable[int], v: int, g: Graph) -> Partition:
    """Partition of s by adjacency code to v, cells in descending triple order."""
    s_bits = s if isinstance(s, int) else bits_from(s)
    if s_bits & (1 << v):
        raise ValueError("pivot vertex may not belong to the partitioned set")
    return Partition(tuple(_split_by_vertex(g, s_bits, v)))


def partition_by_set(s: Iterable[int], p: Iterable[int], g: Graph) -> Partition:
    """Partition of s by degree triple toward p, cells descending."""
    s_bits = s if isinstance(s, int) else bits_from(s)
    p_bits = p if isinstance(p, int) else bits_from(p)
    if not s_bits:
        raise ValueError("cannot partition an empty set")
    return Partition(tuple(cell for _, cell in _split_by_set(g, s_bits, p_bits)))


def _cell_has_links(g: Graph, cell_bits: int, reference_bits: int) -> bool:
    link = g.masks[3]
    bits = cell_bits
    while bits:
        low = bits & -bits
        bits ^= low
        if link[low.bit_length() - 1] & reference_bits:
            return True
    return False


def vertex_refinement(p: Partition, v: int, g: Graph) -> RefinementOutcome:
    """Refine every cell by adjacency to pivot vertex v, discarding linkless cells.

    v is removed from its own cell; that cell is refined, not discarded.
    """
    vbit = 1 << v
    if not (p.remaining_bits & vbit):
        raise ValueError(f"pivot vertex {v} is not in the partition")
    rem = p.remaining_bits
    new_cells: list[int] = []
    parents: list[int] = []
    discarded: list[DiscardedCell] = []
    for pos, cell in enumerate(p.cell_bits):
        if cell & vbit:
            sub = cell & ~vbit
            if not sub:
                continue
        else:
            if not _cell_has_links(g, cell, rem):
                discarded.append(DiscardedCell(pos, bits_tuple(cell)))
                continue
            sub = cell
        if sub & (sub - 1) == 0:  # singleton: nothing to split
            new_cells.append(sub)
            parents.append(pos)
            continue
        for child in _split_by_vertex(g, sub, v):
            new_cells.append(child)
            parents.append(pos)
    return RefinementOutcome(Partition(tuple(new_cells)), tuple(discarded), v, tuple(parents))


def set_refinement(p: Partition, pivot_index: int, g: Graph) -> RefinementOutcome:
    """Refine every cell (the pivot cell included) by triple toward the pivot cell."""
    if not (0 <= pivot_index < len(p.cell_bits)):
        raise ValueError(f"pivot index {pivot_index} out of range")
    pivot = p.cell_bits[pivot_index]
    rem = p.remaining_bits
    new_cells: list[int] = []
    parents: list[int] = []
    discarded: list[DiscardedCell] = []
    for pos, cell in enumerate(p.cell_bits):
        if not _cell_has_links(g, cell, rem):
            discarded.append(DiscardedCell(pos, bits_tuple(cell)))
            continue
        if cell & (cell - 1) == 0:  # singleton: nothing to split
            new_cells.append(cell)
            parents.append(pos)
            continue
        for _, child in _split_by_set(g, cell, pivot):
            new_cells.append(child)
            parents.append(pos)
    return RefinementOutcome(Partition(tuple(new_cells)), tuple(discarded), None, tuple(parents))


def partitions_compatible(p: Partition, g: Graph, q: Partition, h: Graph) -> bool:
    """Cell counts, sizes and uniform remaining-set triples all agree.

    A cell that is not degree-uniform w.r.t. its remaining set makes the
    pair incompatible (it could still be split, so it cannot correspond).
    """
    if len(p.cell_bits) != len(q.cell_bits):
        return False
    p_rem = p.remaining_bits
    q_rem = q.remaining_bits
    for a, b in zip(p.cell_bits, q.cell_bits):
        if a.bit_count() != b.bit_count():
            return False
        ta = uniform_degree(g, a, p_rem)
        if ta is None:
            return False
        if ta != uniform_degree(h, b, q_rem):
            return False
    return True


def is_equitable(p: Partition, g: Graph) -> bool:
    """Every cell degree-uniform toward every cell (own cell included)."""
    for target in p.cell_bits:
        for cell in p.cell_bits:
            if uniform_degree(g, cell, target) is None:
                return False
    return True
