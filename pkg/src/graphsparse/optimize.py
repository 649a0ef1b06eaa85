"""Exact weighted optimization composed over the modular decomposition tree.

Max weight clique and stable set, multicoloring (minimum colors with d(v)
colors per vertex, adjacent color sets disjoint; chromatic number at unit
demands) and clique cover. Each solver recurses over the decomposition —
parallel and series nodes combine child optima directly; prime nodes solve
the quotient with child optima as weights/demands — and returns a concrete,
re-validated certificate. Prime quotients are dispatched to closed-form
solvers (bipartite, trees, the 5-cycle) with a capped branch-and-bound
fallback that fails loudly rather than approximate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_flow

from .classify import CapExceededError
from .graph import Graph, GraphError, are_isomorphic, complement, cycle_graph, \
    is_bipartite, is_tree, vset
from .modular import MDNode, decompose

CLIQUE_CAP = 24
COLORING_CAP = 18


@dataclass(frozen=True)
class WeightedGraph:
    graph: Graph
    w: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.w) != self.graph.n:
            raise GraphError("weight vector length must equal vertex count")
        if any(x < 0 or x != int(x) for x in self.w):
            raise GraphError("weights must be nonnegative integers")

    @staticmethod
    def unit(g: Graph) -> "WeightedGraph":
        return WeightedGraph(g, (1,) * g.n)

    def complement(self) -> "WeightedGraph":
        return WeightedGraph(complement(self.graph), self.w)


@dataclass(frozen=True)
class Solution:
    """Optimum value plus a concrete certificate.

    kind 'clique'/'stable': certificate is the vertex set. kind 'coloring'/
    'cover': certificate maps each vertex to its set of colors in range(value).
    """

    kind: str
    value: int
    vertices: Optional[frozenset] = None
    colors: Optional[dict] = None

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind, "objective": self.value}
        if self.vertices is not None:
            out["vertices"] = sorted(self.vertices)
        if self.colors is not None:
            out["colors"] = {str(v): sorted(c) for v, c in sorted(self.colors.items())}
        return out


def _check_subset_solution(sol: Solution, wg: WeightedGraph, adjacent: bool) -> Solution:
    vs = sorted(sol.vertices)
    for i, u in enumerate(vs):
        for v in vs[i + 1:]:
            if wg.graph.has_edge(u, v) != adjacent:
                raise AssertionError(f"{sol.kind} certificate violates adjacency")
    if sum(wg.w[v] for v in vs) != sol.value:
        raise AssertionError(f"{sol.kind} certificate does not match objective")
    return sol


def _check_coloring_solution(sol: Solution, wg: WeightedGraph) -> Solution:
    cols = sol.colors
    for v in range(wg.graph.n):
        cs = cols[v]
        if len(cs) != wg.w[v] or any(c < 0 or c >= sol.value for c in cs):
            raise AssertionError("coloring certificate has a bad color set")
    for u, v in wg.graph.edges():
        if cols[u] & cols[v]:
            raise AssertionError("adjacent vertices share a color")
    return sol


def max_weight_clique(wg: WeightedGraph) -> Solution:
    if wg.graph.n == 0:
        return Solution("clique", 0, vertices=frozenset())
    val, vs = _clique_node(decompose(wg.graph), wg)
    return _check_subset_solution(Solution("clique", val, vertices=vs), wg, True)


def max_weight_stable(wg: WeightedGraph) -> Solution:
    sol = max_weight_clique(wg.complement())
    return _check_subset_solution(
        Solution("stable", sol.value, vertices=sol.vertices), wg, False)


def multichromatic(wg: WeightedGraph) -> Solution:
    if wg.graph.n == 0:
        return Solution("coloring", 0, colors={})
    val, cols = _color_node(decompose(wg.graph), wg)
    return _check_coloring_solution(Solution("coloring", val, colors=cols), wg)


def clique_cover(wg: WeightedGraph) -> Solution:
    """Fewest classes covering each vertex w(v) times; classes are cliques,
    so the certificate is a proper multicoloring of the complement."""
    sol = multichromatic(wg.complement())
    return _check_coloring_solution(
        Solution("cover", sol.value, colors=sol.colors), wg.complement())


# ---------------------------------------------------------------- clique --

def _clique_node(node: MDNode, wg: WeightedGraph) -> tuple[int, frozenset]:
    if node.kind == "leaf":
        v = node.vertices[0]
        return wg.w[v], frozenset([v])
    subs = [_clique_node(ch, wg) for ch in node.children]
    if node.kind == "parallel":
        return max(subs, key=lambda s: s[0])
    if node.kind == "series":
        return sum(s[0] for s in subs), frozenset().union(*(s[1] for s in subs))
    q = node.quotient
    picked = _quotient_clique(q, [s[0] for s in subs])
    value = sum(subs[i][0] for i in picked)
    return value, frozenset().union(*(subs[i][1] for i in picked))


def _quotient_clique(q: Graph, w: Sequence[int]) -> list[int]:
    """Positions of a maximum-weight clique in a prime quotient."""
    sides = is_bipartite(q)
    if sides is not None:
        best = [max(range(q.n), key=lambda v: w[v])]
        for u, v in q.edges():
            if w[u] + w[v] > sum(w[x] for x in best):
                best = [u, v]
        return best
    co = complement(q)
    if is_bipartite(co) is not None:
        return _quotient_stable(co, w)
    if q.n == 5 and are_isomorphic(q, cycle_graph(5)):
        best = [max(range(5), key=lambda v: w[v])]
        for u, v in q.edges():
            if w[u] + w[v] > sum(w[x] for x in best):
                best = [u, v]
        return best
    if q.n > CLIQUE_CAP:
        raise CapExceededError(
            f"clique branch-and-bound is capped at {CLIQUE_CAP} quotient "
            f"vertices, got {q.n}")
    return _clique_bnb(q, list(w))


def _quotient_stable(q: Graph, w: Sequence[int]) -> list[int]:
    sides = is_bipartite(q)
    if sides is None:
        return _quotient_clique(complement(q), w)
    return _bipartite_mwis(q, w, sides)


def _bipartite_mwis(q: Graph, w: Sequence[int], sides) -> list[int]:
    """Max weight independent set: total weight minus a minimum vertex cover,
    computed by maximum flow; the stable set is read off the residual cut."""
    left, right = (sorted(sides[0]), sorted(sides[1]))
    n = q.n
    s, t = n, n + 1
    big = sum(w) + 1
    rows, cols, caps = [], [], []

    def arc(u, v, c):
        rows.append(u); cols.append(v); caps.append(c)

    for u in left:
        arc(s, u, w[u])
    for v in right:
        arc(v, t, w[v])
    for u, v in q.edges():
        if u in sides[1]:
            u, v = v, u
        arc(u, v, big)
    mat = csr_matrix((caps, (rows, cols)), shape=(n + 2, n + 2), dtype=np.int32)
    res = maximum_flow(mat, s, t)
    residual = mat - res.flow  # forward residual capacities
    # vertices reachable from s in the residual network
    reach = np.zeros(n + 2, dtype=bool)
    reach[s] = True
    stack = [s]
    rev = res.flow  # positive flow on (u,v) gives residual arc (v,u)
    while stack:
        u = stack.pop()
        fwd = residual.getrow(u).toarray().ravel() > 0
        bwd = rev.getcol(u).toarray().ravel() > 0
        for v in np.nonzero(fwd | bwd)[0]:
            if not reach[v]:
                reach[v] = True
                stack.append(int(v))
    picked = [u for u in left if reach[u]] + [v for v in right if not reach[v]]
    return [v for v in picked if w[v] > 0] or \
        [max(range(n), key=lambda v: w[v])]


def _clique_bnb(q: Graph, w: list[int]) -> list[int]:
    """Branch and bound with a greedy-coloring bound (sum of per-class maxima)."""
    order = sorted(range(q.n), key=lambda v: -w[v])
    best_val = 0
    best: list[int] = []

    def bound(cands: list[int]) -> int:
        classes: list[tuple[int, int]] = []  # (mask, max weight)
        masks: list[int] = []
        for v in cands:
            for i, mk in enumerate(masks):
                if not (q.adj[v] & mk):
                    masks[i] |= 1 << v
                    classes[i] = (masks[i], max(classes[i][1], w[v]))
                    break
            else:
                masks.append(1 << v)
                classes.append((1 << v, w[v]))
        return sum(c[1] for c in classes)

    def rec(cands: list[int], cur: list[int], cur_val: int) -> None:
        nonlocal best_val, best
        if cur_val > best_val:
            best_val, best = cur_val, list(cur)
        if not cands or cur_val + bound(cands) <= best_val:
            return
        for i, v in enumerate(cands):
            rest = [x for x in cands[i + 1:] if q.has_edge(v, x)]
            if cur_val + w[v] + bound(rest) > best_val:
                cur.append(v)
                rec(rest, cur, cur_val + w[v])
                cur.pop()

    rec(order, [], 0)
    return best


# -------------------------------------------------------------- coloring --

def _color_node(node: MDNode, wg: WeightedGraph) -> tuple[int, dict]:
    if node.kind == "leaf":
        v = node.vertices[0]
        return wg.w[v], {v: frozenset(range(wg.w[v]))}
    subs = [_color_node(ch, wg) for ch in node.children]
    if node.kind == "parallel":
        value = max(s[0] for s in subs)
        cols: dict = {}
        for _, c in subs:
            cols.update(c)
        return value, cols
    if node.kind == "series":
        value = sum(s[0] for s in subs)
        cols = {}
        off = 0
        for k, c in subs:
            for v, cs in c.items():
                cols[v] = frozenset(x + off for x in cs)
            off += k
        return value, cols
    q = node.quotient
    demands = [s[0] for s in subs]
    k, qcols = _quotient_multicolor(q, demands)
    cols = {}
    for i, (di, childcols) in enumerate(subs):
        remap = sorted(qcols[i])  # di colors granted to this position
        for v, cs in childcols.items():
            cols[v] = frozenset(remap[x] for x in cs)
    return k, cols


def _quotient_multicolor(q: Graph, d: Sequence[int]) -> tuple[int, list[frozenset]]:
    """(colors used, per-position color sets) for a prime quotient."""
    sides = is_bipartite(q)
    if sides is not None:
        k = max(max(d, default=0),
                max((d[u] + d[v] for u, v in q.edges()), default=0))
        out = [frozenset(range(d[v])) if v in sides[0]
               else frozenset(range(k - d[v], k)) for v in range(q.n)]
        return k, out
    if q.n == 5 and are_isomorphic(q, cycle_graph(5)):
        return _c5_multicolor(q, d)
    if sum(d) <= COLORING_CAP:
        return _expansion_multicolor(q, d)
    return _setcover_multicolor(q, d)


def _c5_cyclic_order(q: Graph) -> list[int]:
    order = [0]
    prev = -1
    while len(order) < 5:
        nxt = next(v for v in q.neighbors(order[-1]) if v != prev)
        prev = order[-1]
        order.append(nxt)
    return order


def _c5_multicolor(q: Graph, d: Sequence[int]) -> tuple[int, list[frozenset]]:
    """Exact 5-cycle multicoloring via a tiny integer program.

    Color classes are stable sets of the cycle: the five nonadjacent pairs
    and singletons. With x_j colors on pair {c_j, c_{j+2}}, each pair use
    saves one color, so maximize sum(x) under x_j + x_{j+3} <= d(c_j). The
    optimum equals max(heaviest edge, ceil(total/2)), asserted below.
    """
    cyc = _c5_cyclic_order(q)
    dd = [d[cyc[j]] for j in range(5)]
    a = np.zeros((5, 5))
    for j in range(5):
        a[j, j] = 1
        a[j, (j + 3) % 5] = 1
    res = milp(c=-np.ones(5), integrality=np.ones(5),
               constraints=LinearConstraint(a, -np.inf, dd),
               bounds=Bounds(0, np.inf))
    if not res.success:
        raise RuntimeError("5-cycle multicoloring program failed")
    x = [int(round(v)) for v in res.x]
    k = sum(dd) - sum(x)
    expect = max(max((d[u] + d[v] for u, v in q.edges()), default=0),
                 -(-sum(dd) // 2))
    assert k == expect, "pair program disagrees with the closed form"
    colors = [set() for _ in range(5)]
    nxt = 0
    for j in range(5):
        for _ in range(x[j]):
            colors[j].add(nxt)
            colors[(j + 2) % 5].add(nxt)
            nxt += 1
    for j in range(5):
        while len(colors[j]) < dd[j]:
            colors[j].add(nxt)
            nxt += 1
    assert nxt == k
    out: list[frozenset] = [frozenset()] * 5
    for j in range(5):
        out[cyc[j]] = frozenset(colors[j])
    return k, out


def _expansion_multicolor(q: Graph, d: Sequence[int]) -> tuple[int, list[frozenset]]:
    """Replicate each position into a clique of its demand, then color exactly."""
    total = sum(d)
    if total > COLORING_CAP:
        raise CapExceededError(
            f"coloring expansion is capped at {COLORING_CAP} vertices, "
            f"needs {total}")
    owner = [i for i in range(q.n) for _ in range(d[i])]
    edges = [(u, v) for u in range(total) for v in range(u + 1, total)
             if owner[u] == owner[v] or q.has_edge(owner[u], owner[v])]
    big = Graph(total, _adj_from_edges(total, edges))
    k, coloring = _exact_chromatic(big)
    out = [set() for _ in range(q.n)]
    for v, c in enumerate(coloring):
        out[owner[v]].add(c)
    return k, [frozenset(s) for s in out]


def _maximal_stable_masks(g: Graph) -> list[int]:
    """Maximal stable sets as bitmasks (pivoted clique search on the complement)."""
    co = complement(g)
    out: list[int] = []
    full = (1 << g.n) - 1

    def bk(r: int, p: int, x: int) -> None:
        if p == 0 and x == 0:
            out.append(r)
            return
        pivot_pool = p | x
        u = (pivot_pool & -pivot_pool).bit_length() - 1
        branch = p & ~co.adj[u]
        while branch:
            v = (branch & -branch).bit_length() - 1
            branch &= branch - 1
            bk(r | (1 << v), p & co.adj[v], x & co.adj[v])
            p &= ~(1 << v)
            x |= 1 << v

    bk(0, full, 0)
    return out


def _setcover_multicolor(q: Graph, d: Sequence[int]) -> tuple[int, list[frozenset]]:
    """Exact multicoloring as an integer cover: pick each maximal stable set
    an integral number of times so every vertex is covered d(v) times."""
    if q.n > CLIQUE_CAP:
        raise CapExceededError(
            f"multicoloring set cover is capped at {CLIQUE_CAP} quotient "
            f"vertices, got {q.n}")
    masks = _maximal_stable_masks(q)
    a = np.array([[m >> v & 1 for m in masks] for v in range(q.n)], dtype=float)
    res = milp(c=np.ones(len(masks)), integrality=np.ones(len(masks)),
               constraints=LinearConstraint(a, np.asarray(d, float), np.inf),
               bounds=Bounds(0, np.inf))
    if not res.success:
        raise RuntimeError("multicoloring cover program failed")
    x = [int(round(v)) for v in res.x]
    k = sum(x)
    out = [set() for _ in range(q.n)]
    nxt = 0
    for m, reps in zip(masks, x):
        for _ in range(reps):
            for v in range(q.n):
                if m >> v & 1 and len(out[v]) < d[v]:
                    out[v].add(nxt)
            nxt += 1
    return k, [frozenset(s) for s in out]


def _adj_from_edges(n: int, edges) -> tuple[int, ...]:
    adj = [0] * n
    for u, v in edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return tuple(adj)


def _exact_chromatic(g: Graph) -> tuple[int, list[int]]:
    """Chromatic number and a witness coloring by iterative-deepening search."""
    if g.n == 0:
        return 0, []
    order = sorted(range(g.n), key=lambda v: -g.degree(v))
    greedy = [-1] * g.n
    for v in order:
        used = {greedy[u] for u in g.neighbors(v) if greedy[u] >= 0}
        greedy[v] = next(c for c in itertools.count() if c not in used)
    ub = max(greedy) + 1
    lb = len(_clique_bnb(g, [1] * g.n))
    for k in range(lb, ub):
        got = _try_color(g, order, k)
        if got is not None:
            return k, got
    return ub, greedy


def _try_color(g: Graph, order: list[int], k: int) -> Optional[list[int]]:
    color = [-1] * g.n

    def rec(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        used = {color[u] for u in g.neighbors(v) if color[u] >= 0}
        cap = min(k, max([color[order[j]] for j in range(i)], default=-1) + 2)
        for c in range(cap):  # symmetry break: at most one brand-new color
            if c not in used:
                color[v] = c
                if rec(i + 1):
                    return True
                color[v] = -1
        return False

    return color if rec(0) else None
