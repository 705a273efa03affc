"""Directed graphs over a four-valued adjacency coding.

Every ordered pair of distinct vertices (u, v) carries one code:
0 = no arc either way, 1 = arc (v, u) only, 2 = arc (u, v) only,
3 = arcs both ways.  Undirected graphs use codes 0 and 3 only.
"""

from __future__ import annotations

from enum import IntEnum
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np

_INVERSE = (0, 2, 1, 3)


class Code(IntEnum):
    """Adjacency code for an ordered vertex pair."""

    NONE = 0
    IN = 1
    OUT = 2
    BOTH = 3

    @property
    def inverse(self) -> "Code":
        return Code(_INVERSE[self])


class DegreeTriple(NamedTuple):
    """Counts of code-3/2/1 neighbours within a reference set.

    Ordered lexicographically, which tuple comparison gives for free.
    """

    d3: int
    d2: int
    d1: int


ZERO_TRIPLE = DegreeTriple(0, 0, 0)


class GraphFormatError(ValueError):
    """Malformed graph file; carries the offending 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def bits_from(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits_tuple(mask: int) -> tuple[int, ...]:
    return tuple(iter_bits(mask))


class Graph:
    """Immutable dense graph: n and an n x n uint8 matrix of adjacency codes."""

    __slots__ = ("n", "adj", "_masks")

    def __init__(self, adj: np.ndarray, validate: bool = True):
        adj = np.ascontiguousarray(adj, dtype=np.uint8)
        if validate:
            _validate_matrix(adj)
        adj.setflags(write=False)
        self.n = adj.shape[0]
        self.adj = adj
        self._masks: tuple[list[int], ...] | None = None

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]]) -> "Graph":
        adj = np.zeros((n, n), dtype=np.uint8)
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arc ({u},{v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if adj[v, u] & 1:  # reverse arc already present
                adj[u, v] = 3
                adj[v, u] = 3
            else:
                adj[u, v] |= 2
                adj[v, u] |= 1
        return cls(adj, validate=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = np.zeros((n, n), dtype=np.uint8)
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            adj[u, v] = 3
            adj[v, u] = 3
        return cls(adj, validate=False)

    @classmethod
    def from_matrix(cls, matrix) -> "Graph":
        return cls(np.asarray(matrix), validate=True)

    @property
    def masks(self) -> tuple[list[int], list[int], list[int], list[int]]:
        """Per-vertex row bitmasks (m3, m2, m1, links) for set-degree counting."""
        if self._masks is None:
            m3 = _pack_rows(self.adj == 3)
            m2 = _pack_rows(self.adj == 2)
            m1 = _pack_rows(self.adj == 1)
            link = [a | b | c for a, b, c in zip(m3, m2, m1)]
            self._masks = (m3, m2, m1, link)
        return self._masks

    @property
    def all_bits(self) -> int:
        return (1 << self.n) - 1

    def is_undirected(self) -> bool:
        return not np.any((self.adj == 1) | (self.adj == 2))

    def arc_count(self) -> int:
        """Number of directed arcs (a code-3 pair contributes two)."""
        return int(np.count_nonzero(self.adj == 2)) + int(np.count_nonzero(self.adj == 3))

    def code_counts(self) -> tuple[int, int, int]:
        """Total matrix entries with codes 3, 2, 1."""
        return (
            int(np.count_nonzero(self.adj == 3)),
            int(np.count_nonzero(self.adj == 2)),
            int(np.count_nonzero(self.adj == 1)),
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self.adj, other.adj))

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, arcs={self.arc_count()})"


def _validate_matrix(adj: np.ndarray) -> None:
    if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
        raise ValueError("adjacency matrix must be square")
    if np.any(adj > 3):
        raise ValueError("adjacency codes must lie in {0,1,2,3}")
    if np.any(np.diag(adj) != 0):
        raise ValueError("self-loops are not representable (nonzero diagonal)")
    # code symmetry: adj[u][v] = inverse(adj[v][u])
    inv = np.array(_INVERSE, dtype=np.uint8)
    if not np.array_equal(adj, inv[adj.T]):
        raise ValueError("matrix violates code symmetry adj[u][v] == inverse(adj[v][u])")


def _pack_rows(rows: np.ndarray) -> list[int]:
    packed = np.packbits(rows, axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


class InducedSubgraph(NamedTuple):
    graph: "Graph"
    index_map: dict[int, int]  # old vertex -> new vertex


def adjacency_code(g: Graph, u: int, v: int) -> Code:
    """Stored code for the ordered pair (u, v)."""
    if u == v:
        raise ValueError("adjacency code is undefined on the diagonal")
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise ValueError(f"vertex out of range for n={g.n}")
    return Code(int(g.adj[u, v]))


def available_degree(g: Graph, v: int, s: Iterable[int]) -> DegreeTriple:
    """Counts of v's code-3/2/1 neighbours inside s."""
    if not (0 <= v < g.n):
        raise ValueError(f"vertex {v} out of range for n={g.n}")
    mask = s if isinstance(s, int) else bits_from(s)
    return available_degree_bits(g, v, mask)


def available_degree_bits(g: Graph, v: int, mask: int) -> DegreeTriple:
    m3, m2, m1, _ = g.masks
    return DegreeTriple(
        (m3[v] & mask).bit_count(),
        (m2[v] & mask).bit_count(),
        (m1[v] & mask).bit_count(),
    )


def has_links(g: Graph, v: int, s: Iterable[int]) -> bool:
    """True iff v has any neighbour (any code) inside s."""
    if not (0 <= v < g.n):
        raise ValueError(f"vertex {v} out of range for n={g.n}")
    mask = s if isinstance(s, int) else bits_from(s)
    return bool(g.masks[3][v] & mask)


def uniform_degree(g: Graph, cell: Iterable[int], s: Iterable[int]) -> DegreeTriple | None:
    """The shared triple of every cell member w.r.t. s, or None if they differ."""
    members = cell if isinstance(cell, int) else bits_from(cell)
    if not members:
        raise ValueError("uniform degree of an empty cell is undefined")
    mask = s if isinstance(s, int) else bits_from(s)
    it = iter_bits(members)
    first = available_degree_bits(g, next(it), mask)
    for u in it:
        if available_degree_bits(g, u, mask) != first:
            return None
    return first


def induced_subgraph(g: Graph, s: Iterable[int]) -> InducedSubgraph:
    """Subgraph on s (codes preserved) plus the old->new index map."""
    vertices = sorted(s if not isinstance(s, int) else iter_bits(s))
    idx = np.array(vertices, dtype=np.intp)
    sub = g.adj[np.ix_(idx, idx)].copy()
    return InducedSubgraph(Graph(sub, validate=False), {v: i for i, v in enumerate(vertices)})


def apply_permutation(g: Graph, f: Sequence[int]) -> Graph:
    """Relabelled copy: result.adj[f(u)][f(v)] = g.adj[u][v]."""
    perm = np.asarray(f, dtype=np.intp)
    if perm.shape != (g.n,) or not np.array_equal(np.sort(perm), np.arange(g.n)):
        raise ValueError("permutation must be a bijection on 0..n-1")
    out = np.zeros_like(g.adj)
    out[np.ix_(perm, perm)] = g.adj
    return Graph(out, validate=False)


def is_isomorphism(g: Graph, h: Graph, f: Sequence[int]) -> bool:
    """True iff f maps g onto h code-for-code.  Size mismatch is just False."""
    if g.n != h.n:
        return False
    perm = np.asarray(f, dtype=np.intp)
    if perm.shape != (g.n,) or not np.array_equal(np.sort(perm), np.arange(g.n)):
        return False
    return bool(np.array_equal(h.adj[np.ix_(perm, perm)], g.adj))


def load_graph(data: str | bytes) -> Graph:
    """Parse either supported format:

    - undirected: header ``p edge <n> <m>``, lines ``e <u> <v>`` (1-based)
    - directed:   header ``p arc <n> <m>``,  lines ``a <u> <v>`` (1-based),
      one arc per line; reciprocal pairs become code 3.

    Lines starting with ``c`` are comments.
    """
    if isinstance(data, bytes):
        data = data.decode()
    n = None
    directed = False
    pairs: list[tuple[int, int]] = []
    for lineno, raw in enumerate(data.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        fields = line.split()
        tag = fields[0]
        if tag == "p":
            if n is not None:
                raise GraphFormatError("duplicate header", lineno)
            if len(fields) != 4 or fields[1] not in ("edge", "arc"):
                raise GraphFormatError(f"malformed header {line!r}", lineno)
            try:
                n = int(fields[2])
                int(fields[3])
            except ValueError:
                raise GraphFormatError(f"malformed header {line!r}", lineno) from None
            if n < 0:
                raise GraphFormatError("negative vertex count", lineno)
            directed = fields[1] == "arc"
        elif tag in ("e", "a"):
            if n is None:
                raise GraphFormatError("arc line before header", lineno)
            if (tag == "a") != directed:
                raise GraphFormatError(f"line type {tag!r} does not match header", lineno)
            if len(fields) != 3:
                raise GraphFormatError(f"malformed line {line!r}", lineno)
            try:
                u, v = int(fields[1]), int(fields[2])
            except ValueError:
                raise GraphFormatError(f"malformed line {line!r}", lineno) from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphFormatError(f"vertex index out of range in {line!r}", lineno)
            if u == v:
                raise GraphFormatError(f"self-loop at vertex {u}", lineno)
            pairs.append((u - 1, v - 1))
        else:
            raise GraphFormatError(f"unknown line type {tag!r}", lineno)
    if n is None:
        raise GraphFormatError("missing header", None)
    if directed:
        return Graph.from_arcs(n, pairs)
    return Graph.from_edges(n, pairs)


def save_graph(g: Graph) -> str:
    """Canonical text form; undirected graphs use the edge format."""
    lines = []
    if g.is_undirected():
        edges = [(u, v) for u in range(g.n) for v in range(u + 1, g.n) if g.adj[u, v] == 3]
        lines.append(f"p edge {g.n} {len(edges)}")
        lines.extend(f"e {u + 1} {v + 1}" for u, v in edges)
    else:
        arcs = [
            (u, v)
            for u in range(g.n)
            for v in range(g.n)
            if u != v and g.adj[u, v] in (2, 3)
        ]
        lines.append(f"p arc {g.n} {len(arcs)}")
        lines.extend(f"a {u + 1} {v + 1}" for u, v in arcs)
    return "\n".join(lines) + "\n"
