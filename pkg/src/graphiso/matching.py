"""Top-level isomorphism test: directed search against a target sequence.

The side with fewer counted backtracking points (after automorphism
discovery) becomes the target; the other graph's semiorbit classes prune
equivalent alternatives.  Failure propagates through the integer protocol
with components-theorem backjumps unless chronological backtracking is
requested for A/B comparison.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .graph import Graph, is_isomorphism, iter_bits
from .orbits import ExtendedSequence, SemiorbitPartition, find_automorphisms
from .search import (
    BuiltLevel,
    SearchStats,
    SearchTimeout,
    backjump_level,
    run_search,
)
from .sequence import SequenceOfPartitions, backtrack_amount, degree_partition, generate_sequence, _cell_triples

__all__ = [
    "MatchOutcome",
    "InternalError",
    "SearchTimeout",
    "backjump_level",
    "match",
    "are_isomorphic",
    "extract_isomorphism",
]


class InternalError(RuntimeError):
    """A structural guarantee failed; indicates a bug, not a bad input."""


@dataclass
class MatchOutcome:
    """Result of a match: protocol level, optional mapping, search counters."""

    level: int
    mapping: tuple[int, ...] | None
    stats: SearchStats = field(default_factory=SearchStats)
    fast_rejected: bool = False
    reversed_direction: bool = False

    @property
    def decision(self) -> bool:
        return self.level >= 0


def match(
    g: Graph,
    h: Graph,
    q_g: SequenceOfPartitions,
    o_h: SemiorbitPartition | None = None,
    *,
    backjump: bool = True,
    deadline: float | None = None,
) -> MatchOutcome:
    """Search for a sequence for h compatible with q_g, starting at level 0.

    The returned level follows the integer protocol: the final level index
    on success, -1 when no level offers another feasible alternative.
    """
    stats = SearchStats()
    start = degree_partition(h)
    level, built = run_search(
        q_g,
        h,
        start_level=0,
        start_partition=start,
        backjump=backjump,
        orbits=o_h,
        deadline=deadline,
        stats=stats,
    )
    mapping = None
    if built is not None:
        mapping = extract_isomorphism(q_g, built, g, h)
    return MatchOutcome(level, mapping, stats)


def extract_isomorphism(
    q_g: SequenceOfPartitions,
    built_h_sequence: list[BuiltLevel],
    g: Graph,
    h: Graph,
) -> tuple[int, ...]:
    """Mapping g -> h read off two compatible complete sequences.

    Pivot vertices pair level by level, discarded cells pair by position
    with members in ascending order, final cells pair by position.  The
    result is checked; a failure here contradicts the compatibility
    characterization and is raised as an InternalError.
    """
    n = g.n
    mapping: list[int | None] = [None] * n
    for lv, bl in zip(q_g.levels[:-1], built_h_sequence):
        if lv.pivot_vertex is not None:
            mapping[lv.pivot_vertex] = bl.pivot_vertex
        for dq, db in zip(lv.discarded, bl.discarded):
            for a, b in zip(dq.vertices, db.vertices):
                mapping[a] = b
    for cq, cb in zip(
        q_g.levels[-1].partition.cell_bits, built_h_sequence[-1].partition.cell_bits
    ):
        for a, b in zip(iter_bits(cq), iter_bits(cb)):
            mapping[a] = b
    if any(v is None for v in mapping):
        raise InternalError("extracted mapping does not cover every vertex")
    result = tuple(mapping)  # type: ignore[arg-type]
    if not is_isomorphism(g, h, result):
        raise InternalError("extracted mapping failed isomorphism validation")
    return result


def _fast_reject(g: Graph, h: Graph) -> bool:
    if g.n != h.n:
        return True
    if g.code_counts() != h.code_counts():
        return True
    dp_g, dp_h = degree_partition(g), degree_partition(h)
    if dp_g.sizes() != dp_h.sizes():
        return True
    return _cell_triples(g, dp_g) != _cell_triples(h, dp_h)


def are_isomorphic(
    g: Graph,
    h: Graph,
    *,
    backjump: bool = True,
    orbit_pruning: bool = True,
    deadline: float | None = None,
    timeout: float | None = None,
) -> MatchOutcome:
    """Full pipeline: fast rejections, sequences, automorphism discovery, match.

    On success the mapping is oriented g -> h regardless of which sequence
    served as the target.  Fast rejections never change decisions, only
    cost.  backjump/orbit_pruning exist for soundness A/B tests.
    """
    if timeout is not None and deadline is None:
        deadline = time.monotonic() + timeout
    if _fast_reject(g, h):
        return MatchOutcome(-1, None, fast_rejected=True)
    e_g = find_automorphisms(g, generate_sequence(g), deadline=deadline)
    e_h = find_automorphisms(h, generate_sequence(h), deadline=deadline)
    forward = backtrack_amount(e_g.seq) <= backtrack_amount(e_h.seq)
    if forward:
        outcome = match(
            g, h, e_g.seq, e_h.orbits if orbit_pruning else None,
            backjump=backjump, deadline=deadline,
        )
        return outcome
    outcome = match(
        h, g, e_h.seq, e_g.orbits if orbit_pruning else None,
        backjump=backjump, deadline=deadline,
    )
    mapping = None
    if outcome.mapping is not None:
        inverse: list[int] = [0] * g.n
        for x, y in enumerate(outcome.mapping):
            inverse[y] = x
        mapping = tuple(inverse)
    return MatchOutcome(outcome.level, mapping, outcome.stats, reversed_direction=True)
