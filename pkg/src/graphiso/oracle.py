"""Brute-force ground truth for small graphs, plus seeded corpus generators.

Exact by construction: the assignment search explores every consistent
prefix in lexicographic order, pruning only branches that already violate
a degree triple or an assigned adjacency code.
"""

from __future__ import annotations

import random
from typing import Iterable

from .graph import Graph, apply_permutation, available_degree_bits

DEFAULT_MAX_N = 8


def _check_limit(n: int, max_n: int) -> None:
    if n > max_n:
        raise ValueError(f"brute force refused: n={n} exceeds max_n={max_n}")


def _degree_keys(g: Graph) -> list:
    full = g.all_bits
    return [available_degree_bits(g, v, full) for v in range(g.n)]


def brute_force_isomorphism(
    g: Graph, h: Graph, max_n: int = DEFAULT_MAX_N
) -> tuple[int, ...] | None:
    """Some isomorphism g -> h, or None after exhausting all candidates."""
    if g.n != h.n:
        return None
    _check_limit(g.n, max_n)
    for f in _assignments(g, h, first_only=True):
        return f
    return None


def brute_force_orbits(g: Graph, max_n: int = DEFAULT_MAX_N) -> tuple[tuple[int, ...], ...]:
    """Exact orbit partition from all automorphisms, classes sorted by minimum."""
    _check_limit(g.n, max_n)
    n = g.n
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for f in _assignments(g, g, first_only=False):
        for v in range(n):
            a, b = find(v), find(f[v])
            if a != b:
                parent[a] = b
    groups: dict[int, list[int]] = {}
    for v in range(n):
        groups.setdefault(find(v), []).append(v)
    return tuple(sorted((tuple(sorted(c)) for c in groups.values()), key=lambda c: c[0]))


def _assignments(g: Graph, h: Graph, first_only: bool) -> Iterable[tuple[int, ...]]:
    n = g.n
    if n == 0:
        yield ()
        return
    adj_g = [[int(x) for x in row] for row in g.adj]
    adj_h = [[int(x) for x in row] for row in h.adj]
    keys_g = _degree_keys(g)
    keys_h = _degree_keys(h)
    if sorted(keys_g) != sorted(keys_h):
        return
    image = [-1] * n
    used = [False] * n

    def extend(i: int):
        if i == n:
            yield tuple(image)
            return
        row_g = adj_g[i]
        key = keys_g[i]
        for c in range(n):
            if used[c] or keys_h[c] != key:
                continue
            row_h = adj_h[c]
            ok = True
            for u in range(i):
                if row_g[u] != row_h[image[u]]:
                    ok = False
                    break
            if not ok:
                continue
            image[i] = c
            used[c] = True
            yield from extend(i + 1)
            used[c] = False
            image[i] = -1

    for f in extend(0):
        yield f
        if first_only:
            return


def random_digraph(n: int, arc_probability: float, seed: int) -> Graph:
    """Each direction of each unordered pair sampled independently with p."""
    rng = random.Random(seed)
    arcs = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < arc_probability:
                arcs.append((u, v))
            if rng.random() < arc_probability:
                arcs.append((v, u))
    return Graph.from_arcs(n, arcs)


def random_permutation(n: int, seed: int) -> tuple[int, ...]:
    perm = list(range(n))
    random.Random(seed).shuffle(perm)
    return tuple(perm)


def random_iso_pair(g: Graph, seed: int) -> tuple[Graph, tuple[int, ...]]:
    """A seeded relabelling of g together with the permutation used."""
    perm = random_permutation(g.n, seed)
    return apply_permutation(g, perm), perm
