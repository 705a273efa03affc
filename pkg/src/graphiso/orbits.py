"""Limited automorphism discovery over a generated sequence of partitions.

Working from the deepest backtracking point to the shallowest, each
alternative pivot vertex is tried by rebuilding the rest of the sequence
and requiring level-by-level compatibility.  An accepted rebuild yields a
candidate permutation; only permutations that validate as automorphisms
merge equivalence classes, so the resulting semiorbit partition is always
a refinement of the true orbit partition.  A pivot cell that collapses to
one class stops being a backtracking point.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Sequence

from .graph import Graph, is_isomorphism, iter_bits
from .search import BuiltLevel, SearchStats, SearchTimeout, run_search
from .sequence import RefinementKind, SequenceOfPartitions


class SemiorbitPartition:
    """Disjoint vertex classes, each merge backed by a stored automorphism."""

    def __init__(self, graph: Graph, parent: Sequence[int] | None = None, witnesses=()):
        self.graph = graph
        self._parent = list(parent) if parent is not None else list(range(graph.n))
        self.witnesses: list[tuple[int, ...]] = list(witnesses)

    @classmethod
    def singletons(cls, graph: Graph) -> "SemiorbitPartition":
        return cls(graph)

    def copy(self) -> "SemiorbitPartition":
        return SemiorbitPartition(self.graph, self._parent, self.witnesses)

    def find(self, v: int) -> int:
        parent = self._parent
        root = v
        while parent[root] != root:
            root = parent[root]
        while parent[v] != root:
            parent[v], v = root, parent[v]
        return root

    def same_class(self, u: int, v: int) -> bool:
        return self.find(u) == self.find(v)

    def classes(self) -> tuple[tuple[int, ...], ...]:
        """Classes sorted by minimum member, members ascending."""
        groups: dict[int, list[int]] = {}
        for v in range(self.graph.n):
            groups.setdefault(self.find(v), []).append(v)
        return tuple(sorted((tuple(sorted(g)) for g in groups.values()), key=lambda c: c[0]))

    def class_count(self) -> int:
        return len({self.find(v) for v in range(self.graph.n)})


def same_class(o: SemiorbitPartition, u: int, v: int) -> bool:
    return o.same_class(u, v)


def merge_classes(o: SemiorbitPartition, witness: Sequence[int]) -> SemiorbitPartition:
    """New partition with u and witness(u) unioned for every u.

    Raises ValueError unless the witness validates as an automorphism of
    the partition's graph; an unsound class is never created.
    """
    w = tuple(witness)
    if not is_isomorphism(o.graph, o.graph, w):
        raise ValueError("witness is not an automorphism of the graph")
    merged = o.copy()
    for u in range(o.graph.n):
        ru, rv = merged.find(u), merged.find(w[u])
        if ru != rv:
            merged._parent[ru] = rv
    merged.witnesses.append(w)
    return merged


@dataclass
class ExtendedSequence:
    seq: SequenceOfPartitions
    orbits: SemiorbitPartition


def _suffix_witness(
    q: SequenceOfPartitions, built: list[BuiltLevel], start: int
) -> tuple[int, ...] | None:
    """Permutation pairing the original suffix with a rebuilt one.

    Vertices gone before `start` map to themselves; pivot vertices pair by
    level, discarded cells by position (members ascending), final cells by
    position.  Returns None if the pairing fails to form a permutation.
    """
    n = q.graph.n
    mapping = list(range(n))
    used = [False] * n

    def pair(a: int, b: int) -> bool:
        if used[a]:
            return False
        used[a] = True
        mapping[a] = b
        return True

    for offset, lv in enumerate(q.levels[start:-1]):
        bl = built[offset]
        if lv.pivot_vertex is not None:
            if bl.pivot_vertex is None or not pair(lv.pivot_vertex, bl.pivot_vertex):
                return None
        for dq, db in zip(lv.discarded, bl.discarded):
            if len(dq.vertices) != len(db.vertices):
                return None
            for a, b in zip(dq.vertices, db.vertices):
                if not pair(a, b):
                    return None
    for cq, cb in zip(q.levels[-1].partition.cell_bits, built[-1].partition.cell_bits):
        if cq.bit_count() != cb.bit_count():
            return None
        for a, b in zip(iter_bits(cq), iter_bits(cb)):
            if not pair(a, b):
                return None
    if len(set(mapping)) != n:
        return None
    return tuple(mapping)


def find_automorphisms(
    g: Graph, q: SequenceOfPartitions, *, deadline: float | None = None
) -> ExtendedSequence:
    """Extend q with a semiorbit partition, eliminating dead backtracking points."""
    orbits = SemiorbitPartition.singletons(g)
    kinds = list(q.kinds())
    work = q
    stats = SearchStats()
    for level in range(q.t - 1, -1, -1):
        if kinds[level] is not RefinementKind.BACKTRACK:
            continue
        lv = work.levels[level]
        cell = lv.partition.cell_bits[lv.pivot_index]
        pivot = lv.pivot_vertex
        for v in iter_bits(cell):
            if v == pivot or orbits.same_class(v, pivot):
                continue
            if deadline is not None and time.monotonic() > deadline:
                raise SearchTimeout
            result, built = run_search(
                work,
                g,
                start_level=level,
                start_partition=lv.partition,
                forced_vertex=v,
                backjump=True,
                orbits=orbits,
                deadline=deadline,
                stats=stats,
            )
            if built is None:
                continue
            witness = _suffix_witness(work, built, level)
            if witness is None or not is_isomorphism(g, g, witness):
                continue  # failed pairing: a normal negative outcome, never merged
            orbits = merge_classes(orbits, witness)
        if all(orbits.same_class(v, pivot) for v in iter_bits(cell)):
            kinds[level] = RefinementKind.VERTEX
            work = work.with_kinds(kinds)
    return ExtendedSequence(work, orbits)
