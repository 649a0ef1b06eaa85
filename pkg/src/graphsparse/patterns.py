"""Forbidden five-vertex configurations and the brute-force sparseness oracle.

A family F of 5-vertex patterns defines the sparse class: a graph is F-sparse
when every induced subgraph on 6 vertices contains at most one induced copy
of a family member, counted at the vertex-subset level across all members.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Literal, Optional, Sequence

import numpy as np

from . import _kernels
from .graph import (
    Graph,
    GraphError,
    VertexSet,
    bull_graph,
    complement,
    cycle_graph,
    path_graph,
    subgraph_code,
    vset,
)

P5 = path_graph(5)
CO_P5 = complement(P5)  # the house graph
BULL = bull_graph()
C5 = cycle_graph(5)
P4 = path_graph(4)

_STANDARD_NAMES: dict[int, str] = {}


@lru_cache(maxsize=None)
def _code_canon_table(k: int) -> np.ndarray:
    """Map each C(k,2)-bit adjacency code to the minimal code over relabelings."""
    pairs = [(i, j) for j in range(1, k) for i in range(j)]
    pair_index = {p: b for b, p in enumerate(pairs)}
    nb = len(pairs)
    perms = list(itertools.permutations(range(k)))
    table = np.zeros(1 << nb, dtype=np.int64)
    for code in range(1 << nb):
        best = code
        for perm in perms:
            out = 0
            for b, (i, j) in enumerate(pairs):
                pi, pj = perm[i], perm[j]
                if pi > pj:
                    pi, pj = pj, pi
                if code >> pair_index[(pi, pj)] & 1:
                    out |= 1 << b
            if out < best:
                best = out
        table[code] = best
    return table


def _pattern_canon(pattern: Graph) -> int:
    code = subgraph_code(pattern, tuple(range(pattern.n)))
    return int(_code_canon_table(pattern.n)[code])


def _register(name: str, pattern: Graph) -> Graph:
    _STANDARD_NAMES[_pattern_canon(pattern)] = name
    return pattern


_register("P5", P5)
_register("co-P5", CO_P5)
_register("bull", BULL)
_register("C5", C5)
_register("P4", P4)


def pattern_name(pattern: Graph) -> str:
    if pattern.n <= 5:
        known = _STANDARD_NAMES.get(_pattern_canon(pattern))
        if known:
            return known
    return f"pattern<n={pattern.n},m={pattern.m}>"


def _is_prime_small(g: Graph) -> bool:
    # direct module scan; only used to validate 5-vertex family members
    full = (1 << g.n) - 1
    for mask in range(1, full):
        if bin(mask).count("1") < 2:
            continue
        ok = True
        for w in range(g.n):
            if mask >> w & 1:
                continue
            x = g.adj[w] & mask
            if x != 0 and x != mask:
                ok = False
                break
        if ok:
            return False
    return g.n >= 4


@dataclass(frozen=True)
class PatternFamily:
    """A named set of pairwise non-isomorphic prime patterns of common order p."""

    name: str
    p: int
    members: tuple[tuple[str, Graph], ...]

    def __post_init__(self) -> None:
        canons = set()
        for mname, pat in self.members:
            if pat.n != self.p:
                raise GraphError(f"member {mname} has {pat.n} vertices, expected {self.p}")
            if not _is_prime_small(pat):
                raise GraphError(f"member {mname} is not prime")
            canons.add(_pattern_canon(pat))
        if len(canons) != len(self.members):
            raise GraphError("family members must be pairwise non-isomorphic")

    def member_graphs(self) -> list[Graph]:
        return [pat for _, pat in self.members]

    def hit_table(self) -> np.ndarray:
        """uint8 table over 10-bit codes: 1 iff the code induces a family member."""
        return _family_tables(self)[0]

    def member_of_code(self, code: int) -> Optional[str]:
        return _family_tables(self)[1].get(int(_code_canon_table(self.p)[code]))


@lru_cache(maxsize=None)
def _family_tables(family: "PatternFamily") -> tuple[np.ndarray, dict[int, str]]:
    canon = _code_canon_table(family.p)
    names = {_pattern_canon(pat): mname for mname, pat in family.members}
    member_canons = np.array(sorted(names), dtype=np.int64)
    table = np.isin(canon, member_canons).astype(np.uint8)
    return table, names


P5_COP5 = PatternFamily("p5-cop5", 5, (("P5", P5), ("co-P5", CO_P5)))
P5_COP5_BULL = PatternFamily(
    "p5-cop5-bull", 5, (("P5", P5), ("co-P5", CO_P5), ("bull", BULL)))

FAMILIES = {f.name: f for f in (P5_COP5, P5_COP5_BULL)}


@dataclass(frozen=True)
class Occurrence:
    """One induced copy of a named pattern, identified by its vertex subset."""

    pattern: str
    vertices: VertexSet

    def sorted_vertices(self) -> tuple[int, ...]:
        return tuple(sorted(self.vertices))


@dataclass(frozen=True)
class SparseVerdict:
    sparse: bool
    window: Optional[VertexSet] = None
    first: Optional[Occurrence] = None
    second: Optional[Occurrence] = None

    def to_json(self) -> dict:
        if self.sparse:
            return {"sparse": True}
        return {
            "sparse": False,
            "window": sorted(self.window),
            "occurrences": [
                {"pattern": occ.pattern, "vertices": list(occ.sorted_vertices())}
                for occ in (self.first, self.second)
            ],
        }


def occurrences(g: Graph, pattern: Graph, name: Optional[str] = None) -> list[Occurrence]:
    """All vertex subsets of g inducing the pattern, in ascending lex order."""
    k = pattern.n
    if k > 5:
        raise GraphError("patterns are capped at 5 vertices")
    if k > g.n:
        return []
    pname = name or pattern_name(pattern)
    target = _pattern_canon(pattern)
    canon = _code_canon_table(k)
    out = []
    if g.n <= 62 and k >= 2:
        subs, codes = _kernels.subset_codes(g.adjacency_matrix(), g.n, k)
        for row in subs[np.asarray(canon[codes]) == target]:
            out.append(Occurrence(pname, vset(int(v) for v in row)))
        return out
    for sub in itertools.combinations(range(g.n), k):
        if canon[subgraph_code(g, sub)] == target:
            out.append(Occurrence(pname, vset(sub)))
    return out


def contains_induced(g: Graph, pattern: Graph) -> bool:
    """Backtracking search for one induced copy; scales past subset scans."""
    k = pattern.n
    if k > g.n:
        return False
    # order pattern vertices to keep the partial map connected where possible
    order = _search_order(pattern)
    mapping = [-1] * k
    used = [False] * g.n

    def extend(pos: int) -> bool:
        if pos == k:
            return True
        pu = order[pos]
        for v in range(g.n):
            if used[v]:
                continue
            ok = True
            for prev in range(pos):
                if pattern.has_edge(pu, order[prev]) != g.has_edge(v, mapping[prev]):
                    ok = False
                    break
            if ok:
                mapping[pos] = v
                used[v] = True
                if extend(pos + 1):
                    return True
                used[v] = False
        return False

    return extend(0)


def _search_order(pattern: Graph) -> list[int]:
    order = [max(range(pattern.n), key=pattern.degree)]
    rest = set(range(pattern.n)) - set(order)
    while rest:
        nxt = max(rest, key=lambda v: (sum(pattern.has_edge(v, u) for u in order), -v))
        order.append(nxt)
        rest.remove(nxt)
    return order


def is_free(g: Graph, patterns: Sequence[Graph]) -> bool:
    """True iff no listed pattern occurs as an induced subgraph (early exit)."""
    for pat in patterns:
        if g.n <= 16:
            if occurrences(g, pat):
                return False
        elif contains_induced(g, pat):
            return False
    return True


def window_verdict(g: Graph, window: Sequence[int], family: PatternFamily) -> SparseVerdict:
    """Oracle restricted to a single (p+1)-vertex window."""
    win = tuple(sorted(window))
    hits = []
    table = family.hit_table()
    for sub in itertools.combinations(win, family.p):
        code = subgraph_code(g, sub)
        if table[code]:
            hits.append(Occurrence(family.member_of_code(code), vset(sub)))
            if len(hits) == 2:
                return SparseVerdict(False, vset(win), hits[0], hits[1])
    return SparseVerdict(True)


def sparse_oracle(g: Graph, family: PatternFamily) -> SparseVerdict:
    """Definitional scan of every (p+1)-window; lexicographically first witness."""
    if g.n <= family.p:
        return SparseVerdict(True)
    window = _kernels.first_violation(g.adjacency_matrix(), g.n, family.hit_table())
    window = [int(v) for v in window]
    if window[0] < 0:
        return SparseVerdict(True)
    verdict = window_verdict(g, window, family)
    assert not verdict.sparse
    return verdict


AttachmentType = Literal[
    "independent", "total", "two_nonadjacent", "three_consecutive", "forbidden"]


def c5_attachment_type(g: Graph, cycle: Sequence[int], x: int) -> AttachmentType:
    """Classify how x attaches to an induced 5-cycle given in cyclic order.

    Anything other than the four sparse-compatible patterns is "forbidden":
    the 6-vertex window spanned by the cycle and x cannot be sparse.
    """
    cyc = tuple(cycle)
    if len(cyc) != 5 or len(set(cyc)) != 5:
        raise GraphError("cycle must list 5 distinct vertices")
    for i in range(5):
        for j in range(i + 1, 5):
            expected = (j - i) % 5 in (1, 4)
            if g.has_edge(cyc[i], cyc[j]) != expected:
                raise GraphError("vertex tuple does not induce a C5 in order")
    if x in cyc:
        raise GraphError("x must lie outside the cycle")
    hit = [i for i in range(5) if g.has_edge(x, cyc[i])]
    if not hit:
        return "independent"
    if len(hit) == 5:
        return "total"
    if len(hit) == 2 and (hit[1] - hit[0]) % 5 in (2, 3):
        return "two_nonadjacent"
    if len(hit) == 3:
        gaps = sorted(((hit[1] - hit[0]) % 5, (hit[2] - hit[1]) % 5,
                       (hit[0] - hit[2]) % 5))
        if gaps == [1, 1, 3]:
            return "three_consecutive"
    return "forbidden"


def participating_vertices(g: Graph, family: PatternFamily) -> VertexSet:
    """Vertices lying in at least one induced family-member copy (subset scan)."""
    table = family.hit_table()
    hit = 0
    if g.n <= 62:
        subs, codes = _kernels.subset_codes(g.adjacency_matrix(), g.n, family.p)
        for row in subs[np.asarray(table[codes]) == 1]:
            for v in row:
                hit |= 1 << int(v)
    else:
        for sub in itertools.combinations(range(g.n), family.p):
            if table[subgraph_code(g, sub)]:
                for v in sub:
                    hit |= 1 << v
    return vset(v for v in range(g.n) if hit >> v & 1)
