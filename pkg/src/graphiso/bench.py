"""Benchmark harness: seeded instance batches, mean time, normalized stddev.

Timing covers the isomorphism test only, never generation or I/O.  A
timed-out instance is recorded, not failed, and larger sizes of the same
configuration are skipped from then on.  Records stream in generation
order; the summary is an exact function of the record stream.
"""

from __future__ import annotations

import json
import statistics
import time
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable, Sequence

from .graph import Graph
from .matching import MatchOutcome, SearchTimeout, are_isomorphic
from . import families


def nsd(samples: Sequence[float], population: bool = True) -> float | None:
    """Standard deviation divided by mean; None on empty input or zero mean.

    Population divisor by default; population=False switches to the
    sample (n-1) divisor, where a singleton yields None.
    """
    if not samples:
        return None
    mean = statistics.fmean(samples)
    if mean == 0:
        return None
    if population:
        dev = statistics.pstdev(samples)
    else:
        if len(samples) < 2:
            return None
        dev = statistics.stdev(samples)
    return dev / mean


@dataclass
class BenchRecord:
    family: str
    size: int
    instance: int
    positive: bool
    decision: bool | None
    seconds: float
    calls: int
    backjumps: int
    timed_out: bool = False
    calls_no_backjump: int | None = None
    size_param: str = ""


@dataclass
class SummaryRow:
    family: str
    size: int
    positive: bool
    count: int
    timed_out: int
    mean_seconds: float | None
    stddev_seconds: float | None
    nsd: float | None
    mean_calls: float | None
    mean_calls_no_backjump: float | None


@dataclass
class BenchPlan:
    """What to run: a family sweep with per-size instance batches."""

    family: str
    sizes: Sequence[str]  # family-specific size parameters, e.g. "3" or "2x3"
    instances: int = 3
    seed: int = 0
    polarities: Sequence[bool] = (True, False)  # positive, negative
    timeout: float | None = 10.0
    compare_backjump: bool = False
    tripartite_k: int = 5
    tripartite_directed: bool = True


def _make_pair(plan: BenchPlan, size: str, positive: bool, seed: int) -> tuple[Graph, Graph, bool]:
    if plan.family == "srg-join":
        return families.make_srg_join_pair(int(size), not positive, seed)
    if plan.family == "tripartite":
        comps = int(size)
        return families.make_tripartite_pair(
            (comps + 1) // 2, comps // 2, plan.tripartite_k,
            plan.tripartite_directed, not positive, seed,
        )
    if plan.family == "two-level":
        n, _, m = size.partition("x")
        return families.make_two_level_pair(int(n), int(m), not positive, seed)
    raise ValueError(f"unknown bench family {plan.family!r}")


def run_bench(
    plan: BenchPlan, on_record: Callable[[BenchRecord], None] | None = None
) -> tuple[list[BenchRecord], list[SummaryRow]]:
    """Execute the plan serially; returns (records, summary)."""
    records: list[BenchRecord] = []
    dead_configs: set[bool] = set()  # polarities whose size sweep already timed out
    for size in plan.sizes:
        for positive in plan.polarities:
            if positive in dead_configs:
                continue
            for instance in range(plan.instances):
                seed = plan.seed * 100003 + instance * 101 + (0 if positive else 1)
                g, h, expected = _make_pair(plan, size, positive, seed)
                deadline = None
                if plan.timeout is not None:
                    deadline = time.monotonic() + plan.timeout
                start = time.perf_counter()
                try:
                    outcome: MatchOutcome | None = are_isomorphic(g, h, deadline=deadline)
                except SearchTimeout:
                    outcome = None
                elapsed = time.perf_counter() - start
                record = BenchRecord(
                    family=plan.family,
                    size=g.n,
                    instance=instance,
                    positive=positive,
                    decision=None if outcome is None else outcome.decision,
                    seconds=elapsed,
                    calls=0 if outcome is None else outcome.stats.calls,
                    backjumps=0 if outcome is None else outcome.stats.backjumps,
                    timed_out=outcome is None,
                    size_param=str(size),
                )
                if outcome is not None and outcome.decision != expected:
                    raise AssertionError(
                        f"decision does not match instance polarity: {record}"
                    )
                if plan.compare_backjump and outcome is not None:
                    second = are_isomorphic(g, h, backjump=False, deadline=None)
                    record.calls_no_backjump = second.stats.calls
                    if record.calls > second.stats.calls:
                        raise AssertionError(
                            f"backjump run used more calls than chronological: {record}"
                        )
                records.append(record)
                if on_record is not None:
                    on_record(record)
                if record.timed_out:
                    dead_configs.add(positive)
    return records, summarize(records)


def summarize(records: Iterable[BenchRecord]) -> list[SummaryRow]:
    """Per (family, size, polarity) statistics over non-timed-out records."""
    groups: dict[tuple[str, int, bool], list[BenchRecord]] = {}
    for r in records:
        groups.setdefault((r.family, r.size, r.positive), []).append(r)
    rows = []
    for (family, size, positive), recs in sorted(groups.items()):
        done = [r for r in recs if not r.timed_out]
        times = [r.seconds for r in done]
        calls = [r.calls for r in done]
        nb = [r.calls_no_backjump for r in done if r.calls_no_backjump is not None]
        rows.append(
            SummaryRow(
                family=family,
                size=size,
                positive=positive,
                count=len(recs),
                timed_out=len(recs) - len(done),
                mean_seconds=statistics.fmean(times) if times else None,
                stddev_seconds=statistics.pstdev(times) if times else None,
                nsd=nsd(times),
                mean_calls=statistics.fmean(calls) if calls else None,
                mean_calls_no_backjump=statistics.fmean(nb) if nb else None,
            )
        )
    return rows


def record_to_json(record: BenchRecord) -> str:
    return json.dumps(asdict(record))


def summary_to_json(rows: Sequence[SummaryRow]) -> str:
    return json.dumps([asdict(r) for r in rows], indent=2)
