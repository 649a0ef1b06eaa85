"""Sparseness recognition via modular decomposition.

A graph is sparse for a family of prime 5-vertex patterns exactly when, at
every prime node of its modular decomposition tree, the quotient is itself
sparse and every quotient vertex that participates in a pattern copy stands
for a singleton module. Small quotients are checked by the exhaustive window
oracle; larger ones by the certified structure templates (bundles, bipartite
P5-free, and their complements). When the answer is negative the recognizer
returns a concrete violating 6-window, re-checked on the input graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .classify import (
    CapExceededError,
    WITNESS_SCAN_BUDGET,
    bundle_anatomy,
    find_violation,
)
from .graph import Graph, complement, is_bipartite
from .modular import MDNode, decompose
from .patterns import (
    P5_COP5,
    P5_COP5_BULL,
    P5,
    PatternFamily,
    SparseVerdict,
    contains_induced,
    occurrences,
    participating_vertices,
    sparse_oracle,
    window_verdict,
)

#: Largest prime quotient the recognizer hands to the exhaustive oracle;
#: beyond this the certified structure templates decide.
ORACLE_CAP = 30


@dataclass(frozen=True)
class RecognitionReport:
    family: str
    sparse: bool
    witness: Optional[SparseVerdict] = None
    quotients_checked: int = 0
    oracle_calls: int = 0

    def to_json(self) -> dict:
        out: dict = {
            "family": self.family,
            "sparse": self.sparse,
            "quotients_checked": self.quotients_checked,
            "oracle_calls": self.oracle_calls,
        }
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out


def is_sparse(g: Graph, family: PatternFamily, *, oracle_cap: int = ORACLE_CAP,
              force_oracle: bool = False,
              witness_budget: int = WITNESS_SCAN_BUDGET) -> RecognitionReport:
    """Decide sparseness; on rejection, attach a violating window of g."""
    if g.n < 6:
        return RecognitionReport(family.name, True)
    root = decompose(g)
    checked = 0
    oracle_calls = 0
    for node in root.prime_nodes():
        checked += 1
        q = node.quotient
        if q.n <= oracle_cap or force_oracle:
            oracle_calls += 1
            verdict = sparse_oracle(q, family)
            if not verdict.sparse:
                return RecognitionReport(
                    family.name, False,
                    witness=_lift_window(g, node, verdict.window, family),
                    quotients_checked=checked, oracle_calls=oracle_calls)
            special = participating_vertices(q, family)
        else:
            special = _structural_special(q, family)
            if special is None:
                witness = find_violation(g, family,
                                         within=node.vertices,
                                         budget=witness_budget)
                if witness is None:
                    raise CapExceededError(
                        "quotient fails the structure templates but no "
                        "violating window was found within the scan budget")
                return RecognitionReport(family.name, False, witness=witness,
                                         quotients_checked=checked,
                                         oracle_calls=oracle_calls)
        for pos in sorted(special):
            child = node.children[pos]
            if len(child.vertices) > 1:
                witness = _twin_witness(g, node, pos, family)
                return RecognitionReport(family.name, False, witness=witness,
                                         quotients_checked=checked,
                                         oracle_calls=oracle_calls)
    return RecognitionReport(family.name, True, quotients_checked=checked,
                             oracle_calls=oracle_calls)


def recognize_both(g: Graph, **kwargs) -> dict[str, RecognitionReport]:
    return {fam.name: is_sparse(g, fam, **kwargs)
            for fam in (P5_COP5, P5_COP5_BULL)}


def _structural_special(q: Graph, family: PatternFamily) -> Optional[frozenset]:
    """Special vertices of a large prime quotient, or None if not sparse.

    Above the oracle cap the sparse primes are exactly bundles, bipartite
    P5-free graphs, and their complements (certified exhaustively at small
    orders). Pattern copies in a bundle are P5s, which avoid only the
    pendant; the bipartite P5-free graphs are pattern-free. Complementation
    preserves the special set because both families are complement-closed.
    """
    for h in (q, complement(q)):
        anatomy = bundle_anatomy(h)
        if anatomy is not None:
            _, _, pendant = anatomy
            return frozenset(v for v in range(q.n) if v != pendant)
        if is_bipartite(h) and not contains_induced(h, P5):
            return frozenset()
    return None


def _lift_window(g: Graph, node: MDNode, window, family: PatternFamily) -> SparseVerdict:
    """Map a violating quotient window to representatives in g."""
    reps = [min(node.children[pos].vertices) for pos in window]
    verdict = window_verdict(g, tuple(sorted(reps)), family)
    assert not verdict.sparse, "lifted window lost its violation"
    return verdict


def _twin_witness(g: Graph, node: MDNode, pos: int,
                  family: PatternFamily) -> SparseVerdict:
    """Violating window from a pattern copy through a non-singleton module.

    The copy taken with one module representative, plus a second module
    vertex, yields two copies inside one 6-window.
    """
    q = node.quotient
    copy = None
    if q.n <= ORACLE_CAP:
        for _, pattern in family.members:
            for occ in occurrences(g=q, pattern=pattern):
                if pos in occ.vertices:
                    copy = occ.sorted_vertices()
                    break
            if copy is not None:
                break
    else:
        copy = _bundle_copy_through(q, pos)
    assert copy is not None, "special vertex lies in no pattern copy"
    child = node.children[pos]
    first, second = sorted(child.vertices)[:2]
    reps = [first if p == pos else min(node.children[p].vertices) for p in copy]
    verdict = window_verdict(g, tuple(sorted(reps + [second])), family)
    assert not verdict.sparse, "twin window lost its violation"
    return verdict


def _bundle_copy_through(q: Graph, pos: int) -> Optional[tuple[int, ...]]:
    """A P5 vertex set through pos in a bundle quotient (or its complement)."""
    for h in (q, complement(q)):
        anatomy = bundle_anatomy(h)
        if anatomy is None:
            continue
        arms, center, pendant = anatomy
        if pos == pendant:
            return None
        through = [a for a in arms if pos in a]
        other = next(a for a in arms if pos not in a)
        first = through[0] if through else arms[0]
        if first == other:
            other = arms[1]
        return tuple(sorted((center,) + first + other))
    return None
