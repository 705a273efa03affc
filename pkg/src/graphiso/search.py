"""Backtracking search for a partition sequence compatible with a target.

Implements the integer return protocol: a frame at level l that fails
returns the nearest earlier level where at least two current cells share
an ancestor cell (the components-theorem backjump target), -1 if no such
level exists, and the final level index on success.  The search runs on
an explicit stack so deep sequences cannot hit the interpreter recursion
limit.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .graph import Graph, available_degree_bits, iter_bits
from .partition import DiscardedCell, Partition, RefinementOutcome, set_refinement, vertex_refinement
from .sequence import RefinementKind, SequenceOfPartitions, _cell_triples


class SearchTimeout(Exception):
    """Raised when a search exceeds its deadline."""


@dataclass
class SearchStats:
    calls: int = 0
    backjumps: int = 0
    levels_skipped: int = 0
    orbit_prunes: int = 0


@dataclass
class BuiltLevel:
    """Side-graph record of one level on the successful branch."""

    partition: Partition
    pivot_vertex: int | None
    discarded: tuple[DiscardedCell, ...]


def backjump_level(q: SequenceOfPartitions, l: int) -> int:
    """Largest k < l at which two level-l cells share one ancestor cell, else -1.

    Ancestry follows the recorded refinement parent arrays, so discarded
    cells never enter the chains.
    """
    if l <= 0:
        return -1
    cur = list(range(len(q.levels[l].partition.cell_bits)))
    for k in range(l - 1, -1, -1):
        parent = q.parents[k]
        cur = [parent[c] for c in cur]
        if len(set(cur)) < len(cur):
            return k
    return -1


@dataclass
class _Frame:
    level: int
    partition: Partition
    candidates: list[int | None]
    idx: int = 0
    tried: list[int] = field(default_factory=list)
    pivot_vertex: int | None = None
    discarded: tuple[DiscardedCell, ...] = ()


def _candidates_for(q: SequenceOfPartitions, level: int, partition: Partition) -> list[int | None]:
    lv = q.levels[level]
    cell = partition.cell_bits[lv.pivot_index]
    if lv.kind is RefinementKind.SET:
        return [None]
    if lv.kind is RefinementKind.VERTEX:
        # an eliminated backtracking point leaves a multi-vertex cell; any
        # single member works, so commit to the lowest without branching
        return [(cell & -cell).bit_length() - 1]
    out: list[int | None] = []
    bits = cell
    while bits:
        low = bits & -bits
        out.append(low.bit_length() - 1)
        bits ^= low
    return out


def _compatible_start(q: SequenceOfPartitions, level: int, side: Graph, p: Partition) -> bool:
    return (
        p.sizes() == q.sizes(level)
        and _cell_triples(side, p) == q.triples(level)
    )


def _compatible_child(
    q: SequenceOfPartitions, level: int, side: Graph, outcome: RefinementOutcome
) -> bool:
    """Does the side refinement mirror target transition level -> level+1?"""
    part = outcome.partition
    cells = part.cell_bits
    want_sizes = q.sizes(level + 1)
    if len(cells) != len(want_sizes):
        return False
    profile = q.discard_profile(level)
    disc = outcome.discarded
    if len(disc) != len(profile):
        return False
    for d, (pos, size) in zip(disc, profile):
        if d.position != pos or len(d.vertices) != size:
            return False
    want_triples = q.triples(level + 1)
    m3, m2, m1, _ = side.masks
    rem = part.remaining_bits
    for i, c in enumerate(cells):
        if c.bit_count() != want_sizes[i]:
            return False
        u = (c & -c).bit_length() - 1
        t = want_triples[i]
        if (
            (m3[u] & rem).bit_count() != t[0]
            or (m2[u] & rem).bit_count() != t[1]
            or (m1[u] & rem).bit_count() != t[2]
        ):
            return False
    return True


def run_search(
    q: SequenceOfPartitions,
    side: Graph,
    *,
    start_level: int = 0,
    start_partition: Partition,
    forced_vertex: int | None = None,
    backjump: bool = True,
    orbits=None,
    deadline: float | None = None,
    stats: SearchStats | None = None,
) -> tuple[int, list[BuiltLevel] | None]:
    """Search for a side-graph sequence mirroring q from start_level down.

    Returns (level, built) where built is the per-level record list on
    success (level == q.t) and None otherwise.  orbits, when given, must
    expose same_class(u, v); equivalent alternatives already attempted at
    a node are skipped.
    """
    if stats is None:
        stats = SearchStats()
    t = q.t
    if not _compatible_start(q, start_level, side, start_partition):
        return -1, None

    first = _Frame(start_level, start_partition, [])
    if forced_vertex is not None:
        first.candidates = [forced_vertex]
    elif start_level < t:
        first.candidates = _candidates_for(q, start_level, start_partition)
    frames = [first]
    stats.calls += 1
    value: int | None = None  # value being delivered to the top frame
    ticks = 0

    while True:
        ticks += 1
        if deadline is not None and ticks % 64 == 0 and time.monotonic() > deadline:
            raise SearchTimeout
        frame = frames[-1]
        level = frame.level

        if value is not None:
            if value == level:
                value = None  # retry this level with its next alternative
            else:
                frames.pop()  # propagate up immediately
                if not frames:
                    return value, None
                continue

        if level == t:
            side_matrix = tuple(
                tuple(_uniform(side, cx, cy) for cy in frame.partition.cell_bits)
                for cx in frame.partition.cell_bits
            )
            if side_matrix == q.final_matrix():
                return t, [
                    BuiltLevel(fr.partition, fr.pivot_vertex, fr.discarded) for fr in frames
                ]
            value = _fail_value(q, t, backjump, stats)
            frames.pop()
            if not frames:
                return value, None
            continue

        kind = q.levels[level].kind
        advanced = False
        while frame.idx < len(frame.candidates):
            cand = frame.candidates[frame.idx]
            frame.idx += 1
            if (
                cand is not None
                and kind is RefinementKind.BACKTRACK
                and orbits is not None
                and any(orbits.same_class(cand, prev) for prev in frame.tried)
            ):
                stats.orbit_prunes += 1
                continue
            if cand is None:
                outcome = set_refinement(frame.partition, q.levels[level].pivot_index, side)
            else:
                frame.tried.append(cand)
                outcome = vertex_refinement(frame.partition, cand, side)
            if not _compatible_child(q, level, side, outcome):
                continue
            frame.pivot_vertex = cand
            frame.discarded = outcome.discarded
            child = _Frame(level + 1, outcome.partition, [])
            if level + 1 < t:
                child.candidates = _candidates_for(q, level + 1, outcome.partition)
            frames.append(child)
            stats.calls += 1
            advanced = True
            break
        if advanced:
            continue

        value = _fail_value(q, level, backjump, stats)
        frames.pop()
        if not frames:
            return value, None


def _fail_value(q: SequenceOfPartitions, level: int, backjump: bool, stats: SearchStats) -> int:
    if backjump:
        target = backjump_level(q, level)
        if target < level - 1:
            stats.backjumps += 1
            stats.levels_skipped += (level - 1) - target
        return target
    return level - 1


def _uniform(side: Graph, cx: int, cy: int):
    it = iter_bits(cx)
    first = available_degree_bits(side, next(it), cy)
    for u in it:
        if available_degree_bits(side, u, cy) != first:
            return None
    return first
