"""Modular decomposition: strong modules, the decomposition tree, quotients.

The decomposition recurses on connectivity (parallel), co-connectivity
(series), and otherwise computes the maximal proper strong modules by
partition refinement plus module-closure, giving a prime node whose quotient
has only trivial modules. Polynomial, not linear-time, by design.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .graph import (
    Graph,
    GraphError,
    VertexSet,
    complement,
    components,
    induced,
    vset,
)
from .io import encode_graph6


def is_module(g: Graph, s: Iterable[int]) -> bool:
    """True iff every vertex outside s is total for s or independent of s."""
    mask = 0
    for v in s:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} out of range")
        mask |= 1 << v
    if mask == 0:
        raise GraphError("module test requires a nonempty set")
    for w in range(g.n):
        if mask >> w & 1:
            continue
        x = g.adj[w] & mask
        if x != 0 and x != mask:
            return False
    return True


@dataclass(frozen=True)
class MDNode:
    """Node of the modular decomposition tree.

    kind is one of "leaf", "series", "parallel", "prime". vertices always
    holds the original vertex labels below the node (a strong module of the
    input graph); prime nodes carry their quotient graph, whose vertex i
    corresponds to children[i].
    """

    kind: str
    vertices: tuple[int, ...]
    children: tuple["MDNode", ...] = ()
    quotient: Optional[Graph] = None

    @property
    def leaf_vertex(self) -> int:
        if self.kind != "leaf":
            raise GraphError("not a leaf node")
        return self.vertices[0]

    def vertex_set(self) -> VertexSet:
        return vset(self.vertices)

    def walk(self):
        yield self
        for child in self.children:
            yield from child.walk()

    def prime_nodes(self) -> list["MDNode"]:
        return [node for node in self.walk() if node.kind == "prime"]

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind, "vertices": list(self.vertices)}
        if self.kind == "prime":
            out["quotient"] = encode_graph6(self.quotient)
        if self.children:
            out["children"] = [c.to_json() for c in self.children]
        return out


def _closure(a: np.ndarray, n: int, seed: Sequence[int]) -> np.ndarray:
    """Smallest module containing seed: repeatedly absorb partial vertices."""
    in_s = np.zeros(n, dtype=bool)
    in_s[list(seed)] = True
    while True:
        size = int(in_s.sum())
        if size == n:
            return in_s
        cnt = a @ in_s
        partial = ~in_s & (cnt > 0) & (cnt < size)
        if not partial.any():
            return in_s
        in_s |= partial


def _maximal_modules_avoiding(a: np.ndarray, n: int, v0: int) -> list[np.ndarray]:
    """Maximal modules not containing v0, by coarsest partition refinement.

    Start from {v0}, N(v0), rest and split any class some outside vertex is
    partial to; forced splits never cut a module avoiding v0, so the fixpoint
    classes other than {v0} are exactly the maximal such modules.
    """
    cls = np.full(n, -1, dtype=np.int64)
    cls[v0] = 0
    nbr0 = a[v0].astype(bool)
    nbr0[v0] = False
    cls[nbr0] = 1
    cls[cls == -1] = 2
    nclasses = 3
    changed = True
    while changed:
        changed = False
        sizes = np.bincount(cls, minlength=nclasses)
        for y in range(n):
            row = a[y].astype(np.int64)
            cnt = np.bincount(cls, weights=row, minlength=nclasses).astype(np.int64)
            cy = cls[y]
            split = np.nonzero((cnt > 0) & (cnt < sizes))[0]
            for c in split:
                if c == cy or sizes[c] <= 1:
                    continue
                members = (cls == c) & (row > 0)
                cls[members] = nclasses
                sizes = np.append(sizes, int(members.sum()))
                sizes[c] -= sizes[-1]
                nclasses += 1
                changed = True
    out = []
    for c in range(nclasses):
        members = np.nonzero(cls == c)[0]
        if len(members) and not (len(members) == 1 and members[0] == v0):
            out.append(cls == c)
    return out


def _strong_module_partition(g: Graph) -> list[list[int]]:
    """Maximal proper strong modules of a connected, co-connected graph."""
    n = g.n
    a = g.adjacency_matrix().astype(np.int64)
    v0 = 0
    classes = _maximal_modules_avoiding(a, n, v0)
    m_v0 = np.zeros(n, dtype=bool)
    m_v0[v0] = True
    # union of all proper modules through v0; each {v0, x} closure is the
    # smallest module holding both, and overlapping modules union to a module
    for x in range(n):
        if x == v0:
            continue
        closed = _closure(a, n, [v0, x])
        if int(closed.sum()) < n:
            m_v0 |= closed
    parts = [sorted(int(v) for v in np.nonzero(m_v0)[0])]
    for cl in classes:
        if not (cl & m_v0).any():
            parts.append(sorted(int(v) for v in np.nonzero(cl)[0]))
        else:
            # a class overlapping the strong module of v0 must lie inside it
            assert not (cl & ~m_v0).any(), "class straddles a strong module"
    return sorted(parts, key=min)


def _decompose_labeled(g: Graph, labels: Sequence[int]) -> MDNode:
    if g.n == 1:
        return MDNode("leaf", (labels[0],))
    comps = components(g)
    if len(comps) > 1:
        kind = "parallel"
    else:
        comps = components(complement(g))
        kind = "series" if len(comps) > 1 else "prime"
    if kind != "prime":
        children = tuple(
            _decompose_labeled(induced(g, comp), [labels[v] for v in comp])
            for comp in comps)
        children = tuple(sorted(children, key=lambda c: min(c.vertices)))
        return MDNode(kind, tuple(sorted(labels)), children)
    parts = _strong_module_partition(g)
    children = tuple(
        _decompose_labeled(induced(g, part), [labels[v] for v in part])
        for part in parts)
    quot = quotient(g, [vset(p) for p in parts])
    return MDNode("prime", tuple(sorted(labels)), children, quot)


def decompose(g: Graph) -> MDNode:
    """Modular decomposition tree with deterministic least-leaf child order."""
    if g.n == 0:
        raise GraphError("cannot decompose the empty graph")
    return _decompose_labeled(g, list(range(g.n)))


def quotient(g: Graph, parts: Sequence[Iterable[int]]) -> Graph:
    """Contract each part (which must be a module) to one vertex.

    Parts are ordered by ascending least element; adjacency is inherited
    from any pair of representatives, well-defined by the module property.
    """
    part_sets = [sorted(set(p)) for p in parts]
    seen: set[int] = set()
    for p in part_sets:
        if not is_module(g, p):
            raise GraphError(f"part {p} is not a module")
        if seen & set(p):
            raise GraphError("parts must be disjoint")
        seen |= set(p)
    if len(seen) != g.n:
        raise GraphError("parts must partition the vertex set")
    part_sets.sort(key=lambda p: p[0])
    reps = [p[0] for p in part_sets]
    edges = []
    for i in range(len(reps)):
        for j in range(i + 1, len(reps)):
            if g.has_edge(reps[i], reps[j]):
                edges.append((i, j))
    return Graph(len(reps), tuple(
        _mask(edges, i, len(reps)) for i in range(len(reps))))


def _mask(edges: list[tuple[int, int]], v: int, n: int) -> int:
    m = 0
    for a, b in edges:
        if a == v:
            m |= 1 << b
        elif b == v:
            m |= 1 << a
    return m


def is_prime(g: Graph) -> bool:
    """n >= 4 and only trivial modules: the decomposition root is prime with
    all-leaf children."""
    if g.n < 4:
        return False
    root = decompose(g)
    return root.kind == "prime" and all(c.kind == "leaf" for c in root.children)
