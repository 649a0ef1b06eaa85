"""Immutable simple undirected graphs on dense integer vertices.

Vertices are always 0..n-1. Adjacency is stored as one bitmask per vertex,
which gives constant-time adjacency queries and cheap subset arithmetic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

import numpy as np

from . import _kernels

#: Vertex subsets are plain frozensets; helpers below keep iteration ascending.
VertexSet = frozenset

ISO_MAX_VERTICES = 16


class GraphError(ValueError):
    """Invalid graph construction or out-of-contract operation."""


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph: vertex count plus one adjacency bitmask per vertex."""

    n: int
    adj: tuple[int, ...]
    _m: int = field(init=False, repr=False, compare=False, default=0)

    def __post_init__(self) -> None:
        if self.n < 0 or len(self.adj) != self.n:
            raise GraphError(f"adjacency length {len(self.adj)} != n={self.n}")
        full = (1 << self.n) - 1
        m2 = 0
        for v, mask in enumerate(self.adj):
            if mask & (1 << v):
                raise GraphError(f"self-loop at vertex {v}")
            if mask & ~full:
                raise GraphError(f"adjacency of {v} mentions vertices >= n")
            m2 += bin(mask).count("1")
        for u in range(self.n):
            for v in range(u + 1, self.n):
                if bool(self.adj[u] >> v & 1) != bool(self.adj[v] >> u & 1):
                    raise GraphError(f"asymmetric adjacency between {u} and {v}")
        object.__setattr__(self, "_m", m2 // 2)

    @property
    def m(self) -> int:
        return self._m

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return bin(self.adj[v]).count("1")

    def neighbors(self, v: int) -> Iterator[int]:
        return iter_bits(self.adj[v])

    def vertices(self) -> range:
        return range(self.n)

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            rest = self.adj[u] >> (u + 1) << (u + 1)
            for v in iter_bits(rest):
                yield (u, v)

    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(sorted(self.degree(v) for v in range(self.n)))

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.uint8)
        for u, v in self.edges():
            a[u, v] = a[v, u] = 1
        return a

    def bitmask_array(self) -> np.ndarray:
        """Adjacency bitmasks as uint64, for the jitted kernels (needs n <= 62)."""
        if self.n > 62:
            raise GraphError("bitmask kernels support at most 62 vertices")
        return np.array(self.adj, dtype=np.uint64)

    def __str__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def vset(vertices: Iterable[int]) -> VertexSet:
    return frozenset(vertices)


def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph from an edge list; duplicate edges collapse, loops are errors."""
    adj = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u},{v}) out of range for n={n}")
        if u == v:
            raise GraphError(f"loop edge at vertex {u}")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, tuple(adj))


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, tuple((full & ~g.adj[v]) & ~(1 << v) for v in range(g.n)))


def induced(g: Graph, s: Iterable[int]) -> Graph:
    """Induced subgraph on s, relabeled by ascending order of s."""
    order = sorted(set(s))
    if order and (order[0] < 0 or order[-1] >= g.n):
        raise GraphError(f"vertex set {order} not within 0..{g.n - 1}")
    index = {v: i for i, v in enumerate(order)}
    adj = [0] * len(order)
    for i, v in enumerate(order):
        for w in iter_bits(g.adj[v]):
            j = index.get(w)
            if j is not None:
                adj[i] |= 1 << j
    return Graph(len(order), tuple(adj))


def subgraph_code(g: Graph, s: tuple[int, ...]) -> int:
    """Upper-triangle adjacency bits of g[s] in column order, packed into an int.

    s must be ascending. Bit order matches graph6: (0,1),(0,2),(1,2),(0,3),...
    """
    code = 0
    bit = 0
    for j in range(1, len(s)):
        aj = g.adj[s[j]]
        for i in range(j):
            code |= (aj >> s[i] & 1) << bit
            bit += 1
    return code


def graph_from_code(n: int, code: int) -> Graph:
    adj = [0] * n
    bit = 0
    for j in range(1, n):
        for i in range(j):
            if code >> bit & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            bit += 1
    return Graph(n, tuple(adj))


def are_isomorphic(g: Graph, h: Graph) -> bool:
    """Backtracking isomorphism test with degree-sequence pruning; n <= 16."""
    if g.n > ISO_MAX_VERTICES or h.n > ISO_MAX_VERTICES:
        raise GraphError(f"isomorphism test capped at {ISO_MAX_VERTICES} vertices")
    if g.n != h.n or g.m != h.m:
        return False
    if g.degree_sequence() != h.degree_sequence():
        return False
    n = g.n
    gdeg = [g.degree(v) for v in range(n)]
    hdeg = [h.degree(v) for v in range(n)]
    mapping = [-1] * n  # g vertex -> h vertex
    used = [False] * n

    def extend(u: int) -> bool:
        if u == n:
            return True
        for w in range(n):
            if used[w] or gdeg[u] != hdeg[w]:
                continue
            ok = True
            for prev in range(u):
                if g.has_edge(u, prev) != h.has_edge(w, mapping[prev]):
                    ok = False
                    break
            if ok:
                mapping[u] = w
                used[w] = True
                if extend(u + 1):
                    return True
                used[w] = False
        return False

    return extend(0)


def canonical_code(g: Graph) -> bytes:
    """Canonical byte string: equal codes iff isomorphic; n <= 16.

    The code is the vertex count followed by the lexicographically minimal
    upper-triangle adjacency bit string over all vertex orderings, packed
    8 bits per byte.
    """
    if g.n > ISO_MAX_VERTICES:
        raise GraphError(f"canonical code capped at {ISO_MAX_VERTICES} vertices")
    if g.n <= 1:
        return bytes([g.n])
    bits = _kernels.canonical_bits(np.array(g.adj, dtype=np.int64), g.n)
    return bytes([g.n]) + np.packbits(bits).tobytes()


def is_bipartite(g: Graph) -> Optional[tuple[VertexSet, VertexSet]]:
    """BFS 2-coloring: (even layer, odd layer) per component, or None on odd cycle."""
    side = [-1] * g.n
    for start in range(g.n):
        if side[start] != -1:
            continue
        side[start] = 0
        queue = [start]
        while queue:
            nxt = []
            for u in queue:
                for w in iter_bits(g.adj[u]):
                    if side[w] == -1:
                        side[w] = side[u] ^ 1
                        nxt.append(w)
                    elif side[w] == side[u]:
                        return None
            queue = nxt
    return (vset(v for v in range(g.n) if side[v] == 0),
            vset(v for v in range(g.n) if side[v] == 1))


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(_component_of(g, 0)) == g.n


def _component_of(g: Graph, start: int) -> list[int]:
    seen = 1 << start
    stack = [start]
    out = [start]
    while stack:
        u = stack.pop()
        fresh = g.adj[u] & ~seen
        seen |= fresh
        for w in iter_bits(fresh):
            stack.append(w)
            out.append(w)
    return sorted(out)


def components(g: Graph) -> list[list[int]]:
    seen = 0
    comps = []
    for v in range(g.n):
        if not seen >> v & 1:
            comp = _component_of(g, v)
            for w in comp:
                seen |= 1 << w
            comps.append(comp)
    return comps


def is_tree(g: Graph) -> bool:
    return g.n >= 1 and g.m == g.n - 1 and is_connected(g)


# Named small graphs used throughout the toolkit and its tests.
def path_graph(n: int) -> Graph:
    return from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return from_edges(n, list(itertools.combinations(range(n), 2)))


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def bull_graph() -> Graph:
    """Triangle 1-2 plus horns: P4 0-1-2-3 with 4 adjacent to 1 and 2."""
    return from_edges(5, [(0, 1), (1, 2), (2, 3), (1, 4), (2, 4)])
