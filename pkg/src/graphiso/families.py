"""Hard-instance graph families built from regularly connected components.

Three constructions: complete joins of strongly regular components,
unions of tripartite digraph components with A-to-B cross arcs, and
two-level-connected components wired through marked orbit vertices.
Negative instances differ from positives by exactly one component swap.
All generators are seed-deterministic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .graph import Graph, GraphFormatError, apply_permutation, load_graph, save_graph


@dataclass(frozen=True)
class Component:
    """A building-block graph with named vertex subsets used by wiring schemes."""

    graph: Graph
    tag: str
    marked_sets: Mapping[str, tuple[int, ...]] = field(default_factory=dict)

    def __post_init__(self):
        for name, vertices in self.marked_sets.items():
            for v in vertices:
                if not (0 <= v < self.graph.n):
                    raise ValueError(f"marked set {name!r} references vertex {v} >= n")


@dataclass(frozen=True)
class FamilySpec:
    """Instance recipe: component multiset, orientation, polarity, seed."""

    family: str
    counts: Mapping[str, int]
    directed: bool = True
    negative: bool = False
    seed: int = 0
    k: int = 5  # tripartite part size


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    d = 2
    while d * d <= q:
        if q % d == 0:
            return False
        d += 1
    return True


def paley_graph(q: int) -> Graph:
    """Quadratic-residue graph on Z_q; q must be a prime congruent 1 mod 4."""
    if not _is_prime(q) or q % 4 != 1:
        raise ValueError("paley graph requires a prime q with q % 4 == 1")
    residues = {(x * x) % q for x in range(1, q)}
    edges = [(u, v) for u in range(q) for v in range(u + 1, q) if (u - v) % q in residues]
    return Graph.from_edges(q, edges)


def rook_graph_4x4() -> Graph:
    """4x4 grid, vertices adjacent when they share a row or column."""
    edges = []
    for a in range(16):
        for b in range(a + 1, 16):
            if a // 4 == b // 4 or a % 4 == b % 4:
                edges.append((a, b))
    return Graph.from_edges(16, edges)


def shrikhande_graph() -> Graph:
    """Cayley graph on Z4 x Z4 with connection set +-{(1,0),(0,1),(1,1)}."""
    conn = {(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)}
    edges = []
    for a in range(4):
        for b in range(4):
            for c in range(4):
                for d in range(4):
                    u, v = 4 * a + b, 4 * c + d
                    if u < v and ((c - a) % 4, (d - b) % 4) in conn:
                        edges.append((u, v))
    return Graph.from_edges(16, edges)


def verify_srg(g: Graph) -> tuple[int, int, int, int] | None:
    """(n, k, lambda, mu) if g is strongly regular, else None.

    Requires an undirected input.  Graphs without both an adjacent and a
    non-adjacent vertex pair (complete, empty, n < 2) return None: the
    parameters would be vacuous.
    """
    if not g.is_undirected():
        raise ValueError("strong regularity is defined for undirected graphs")
    n = g.n
    m = (g.adj == 3).astype(np.int64)
    degrees = m.sum(axis=1)
    if n < 2 or degrees.min() != degrees.max():
        return None
    k = int(degrees[0])
    common = m @ m
    lam = mu = None
    for u in range(n):
        for v in range(u + 1, n):
            c = int(common[u, v])
            if m[u, v]:
                if lam is None:
                    lam = c
                elif lam != c:
                    return None
            else:
                if mu is None:
                    mu = c
                elif mu != c:
                    return None
    if lam is None or mu is None:
        return None
    return (n, k, lam, mu)


def complete_join(components: Sequence[Component | Graph]) -> Graph:
    """Disjoint copies with every cross-component pair joined by an edge."""
    if not components:
        raise ValueError("complete join needs at least one component")
    graphs = [c.graph if isinstance(c, Component) else c for c in components]
    n = sum(g.n for g in graphs)
    adj = np.full((n, n), 3, dtype=np.uint8)
    np.fill_diagonal(adj, 0)
    offset = 0
    for g in graphs:
        adj[offset : offset + g.n, offset : offset + g.n] = g.adj
        offset += g.n
    return Graph(adj, validate=False)


_TRIPARTITE_SHIFTS = {
    "alpha": ({0, 1}, {0, 1}, {0, 1}),
    "beta": ({0, 1}, {0, 1}, {0, 2}),
}


def tripartite_component(kind: str, k: int) -> Component:
    """Tripartite digraph on parts P0,P1,P2 of size k with circulant arcs.

    Vertex j of part i sends arcs to vertices j+s (mod k) of part i+1 for
    s in the kind's shift set; both kinds are 2-in 2-out regular.  The two
    kinds are non-isomorphic for k >= 5 (directed and undirected), which
    the family tests verify.  Marked sets: A = P0, B = P1.
    """
    if kind not in _TRIPARTITE_SHIFTS:
        raise ValueError(f"unknown tripartite kind {kind!r}")
    if k < 5:
        raise ValueError("tripartite components need k >= 5")
    shifts = _TRIPARTITE_SHIFTS[kind]
    arcs = []
    for i in range(3):
        for j in range(k):
            for s in shifts[i]:
                arcs.append((i * k + j, ((i + 1) % 3) * k + (j + s) % k))
    return Component(
        Graph.from_arcs(3 * k, arcs),
        tag=kind,
        marked_sets={"A": tuple(range(k)), "B": tuple(range(k, 2 * k))},
    )


def _apply_negative(counts: Mapping[str, int], types: Sequence[str]) -> dict[str, int]:
    """Swap one component of the first available type for the other type."""
    out = dict(counts)
    first, second = types
    if out.get(first, 0) >= 1:
        out[first] = out[first] - 1
        out[second] = out.get(second, 0) + 1
    elif out.get(second, 0) >= 1:
        out[second] = out[second] - 1
        out[first] = out.get(first, 0) + 1
    else:
        raise ValueError("negative swap needs at least one component")
    return out


def tripartite_union(spec: FamilySpec) -> Graph:
    """Union of tripartite components with A-to-B cross arcs between all pairs.

    Arcs run from every A-vertex of each component to every B-vertex of
    every other component (code 2).  The undirected variant turns every
    arc of the finished graph into an edge.  Component order is shuffled
    and the result relabelled by the seed.
    """
    counts = dict(spec.counts)
    if spec.negative:
        counts = _apply_negative(counts, ("alpha", "beta"))
    comps: list[Component] = []
    for kind in sorted(counts):
        comps.extend(tripartite_component(kind, spec.k) for _ in range(counts[kind]))
    rng = random.Random(spec.seed)
    rng.shuffle(comps)
    n = sum(c.graph.n for c in comps)
    adj = np.zeros((n, n), dtype=np.uint8)
    offsets = []
    offset = 0
    for c in comps:
        adj[offset : offset + c.graph.n, offset : offset + c.graph.n] = c.graph.adj
        offsets.append(offset)
        offset += c.graph.n
    for i, ci in enumerate(comps):
        a_i = np.array(ci.marked_sets["A"], dtype=np.intp) + offsets[i]
        for j, cj in enumerate(comps):
            if i == j:
                continue
            b_j = np.array(cj.marked_sets["B"], dtype=np.intp) + offsets[j]
            adj[np.ix_(a_i, b_j)] = 2
            adj[np.ix_(b_j, a_i)] = 1
    if not spec.directed:
        adj[adj != 0] = 3
    perm = list(range(n))
    rng.shuffle(perm)
    return apply_permutation(Graph(adj, validate=False), perm)


def two_level_base_pair() -> tuple[Component, Component]:
    """Two non-isomorphic 7-vertex bases with orbits {0} and {1,2,3}.

    Same degree sequence (3,4,4,4,3,3,3), so swapped negatives survive the
    degree-based fast rejections.  Type one is a triangular prism with an
    apex on one triangle; type two keeps one triangle, an independent
    outer set, doubled crossing spokes, and the apex on the outer set.
    """
    prism_apex = Component(
        Graph.from_edges(
            7,
            [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1),
             (4, 5), (5, 6), (6, 4), (1, 4), (2, 5), (3, 6)],
        ),
        tag="prism-apex",
        marked_sets={"orbit1": (0,), "orbit3": (1, 2, 3)},
    )
    cospoke_apex = Component(
        Graph.from_edges(
            7,
            [(0, 4), (0, 5), (0, 6), (1, 2), (2, 3), (3, 1),
             (1, 4), (1, 5), (2, 5), (2, 6), (3, 6), (3, 4)],
        ),
        tag="cospoke-apex",
        marked_sets={"orbit1": (0,), "orbit3": (1, 2, 3)},
    )
    return prism_apex, cospoke_apex


def two_level_family(
    base_a: Component, base_b: Component, n: int, m: int, negative: bool = False
) -> Graph:
    """m first-level blocks of n bases each, wired at two levels.

    Inside a block the orbit3 sets of its n bases form a complete
    n-partite graph; across blocks the orbit1 vertices form a complete
    m-partite graph.  Base types alternate by position; the negative
    variant swaps the type of the last base.
    """
    for c in (base_a, base_b):
        if len(c.marked_sets.get("orbit1", ())) != 1:
            raise ValueError(f"component {c.tag!r} lacks a size-1 'orbit1' marked set")
        if len(c.marked_sets.get("orbit3", ())) != 3:
            raise ValueError(f"component {c.tag!r} lacks a size-3 'orbit3' marked set")
    if n < 1 or m < 1:
        raise ValueError("need n >= 1 and m >= 1")
    grid = [[(base_a if (i + j) % 2 == 0 else base_b) for j in range(n)] for i in range(m)]
    if negative:
        last = grid[m - 1][n - 1]
        grid[m - 1][n - 1] = base_b if last is base_a else base_a
    comps = [grid[i][j] for i in range(m) for j in range(n)]
    total = sum(c.graph.n for c in comps)
    adj = np.zeros((total, total), dtype=np.uint8)
    offsets = []
    offset = 0
    for c in comps:
        adj[offset : offset + c.graph.n, offset : offset + c.graph.n] = c.graph.adj
        offsets.append(offset)
        offset += c.graph.n
    def marked(i: int, j: int, name: str) -> np.ndarray:
        c = grid[i][j]
        return np.array(c.marked_sets[name], dtype=np.intp) + offsets[i * n + j]
    # level 1: orbit3 sets within a block, complete n-partite
    for i in range(m):
        for j1 in range(n):
            for j2 in range(j1 + 1, n):
                s1, s2 = marked(i, j1, "orbit3"), marked(i, j2, "orbit3")
                adj[np.ix_(s1, s2)] = 3
                adj[np.ix_(s2, s1)] = 3
    # level 2: orbit1 vertices across blocks, complete m-partite
    for i1 in range(m):
        for i2 in range(i1 + 1, m):
            for j1 in range(n):
                for j2 in range(n):
                    s1, s2 = marked(i1, j1, "orbit1"), marked(i2, j2, "orbit1")
                    adj[np.ix_(s1, s2)] = 3
                    adj[np.ix_(s2, s1)] = 3
    return Graph(adj, validate=False)


def load_component(data: str | bytes) -> Component:
    """Graph file plus marked-set annotation lines ``s <name> <v...>`` (1-based)."""
    if isinstance(data, bytes):
        data = data.decode()
    graph_lines = []
    annotations: list[tuple[int, str, list[int]]] = []
    for lineno, raw in enumerate(data.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("s"):
            fields = line.split()
            if len(fields) < 3:
                raise GraphFormatError(f"malformed marked-set line {line!r}", lineno)
            try:
                vertices = [int(x) for x in fields[2:]]
            except ValueError:
                raise GraphFormatError(f"malformed marked-set line {line!r}", lineno) from None
            annotations.append((lineno, fields[1], vertices))
        else:
            graph_lines.append(raw)
    graph = load_graph("\n".join(graph_lines))
    marked: dict[str, tuple[int, ...]] = {}
    for lineno, name, vertices in annotations:
        for v in vertices:
            if not (1 <= v <= graph.n):
                raise GraphFormatError(f"marked vertex {v} out of range", lineno)
        marked[name] = tuple(sorted(v - 1 for v in vertices))
    return Component(graph, tag="user", marked_sets=marked)


def save_component(c: Component) -> str:
    out = save_graph(c.graph)
    for name in sorted(c.marked_sets):
        vertices = " ".join(str(v + 1) for v in c.marked_sets[name])
        out += f"s {name} {vertices}\n"
    return out


SRG_COMPONENTS = {
    "shrikhande": shrikhande_graph,
    "rook": rook_graph_4x4,
}


def _relabel(g: Graph, seed: int) -> Graph:
    perm = list(range(g.n))
    random.Random(seed).shuffle(perm)
    return apply_permutation(g, perm)


def build_srg_join(types: Sequence[str], seed: int) -> Graph:
    """Complete join of the named 16-vertex SRG components, shuffled and relabelled."""
    comps = [Graph(SRG_COMPONENTS[t]().adj) for t in types]
    rng = random.Random(seed)
    order = list(range(len(comps)))
    rng.shuffle(order)
    joined = complete_join([comps[i] for i in order])
    perm = list(range(joined.n))
    rng.shuffle(perm)
    return apply_permutation(joined, perm)


def srg_join_types(copies: int, negative: bool = False) -> list[str]:
    types = ["shrikhande" if i % 2 == 0 else "rook" for i in range(copies)]
    if negative:
        types[-1] = "rook" if types[-1] == "shrikhande" else "shrikhande"
    return types


def make_srg_join_pair(copies: int, negative: bool, seed: int) -> tuple[Graph, Graph, bool]:
    """(g, h, expected_isomorphic) for the SRG complete-join family."""
    if copies < 1:
        raise ValueError("need at least one component")
    g = build_srg_join(srg_join_types(copies, False), seed * 2 + 1)
    h = build_srg_join(srg_join_types(copies, negative), seed * 2 + 2)
    return g, h, not negative


def make_tripartite_pair(
    alpha: int, beta: int, k: int, directed: bool, negative: bool, seed: int
) -> tuple[Graph, Graph, bool]:
    """(g, h, expected_isomorphic) for the tripartite-union family."""
    counts = {"alpha": alpha, "beta": beta}
    g = tripartite_union(
        FamilySpec("tripartite", counts, directed=directed, negative=False, seed=seed * 2 + 1, k=k)
    )
    h = tripartite_union(
        FamilySpec("tripartite", counts, directed=directed, negative=negative, seed=seed * 2 + 2, k=k)
    )
    return g, h, not negative


def make_two_level_pair(n: int, m: int, negative: bool, seed: int) -> tuple[Graph, Graph, bool]:
    """(g, h, expected_isomorphic) for the built-in two-level family."""
    base_a, base_b = two_level_base_pair()
    g = _relabel(two_level_family(base_a, base_b, n, m, False), seed * 2 + 1)
    h = _relabel(two_level_family(base_a, base_b, n, m, negative), seed * 2 + 2)
    return g, h, not negative
