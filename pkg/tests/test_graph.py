import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphsparse.graph import (
    Graph,
    GraphError,
    are_isomorphic,
    bull_graph,
    canonical_code,
    complement,
    complete_graph,
    cycle_graph,
    empty_graph,
    from_edges,
    graph_from_code,
    induced,
    is_bipartite,
    is_connected,
    is_tree,
    path_graph,
    subgraph_code,
)

from conftest import all_labeled_graphs, random_graph


def test_basic_invariants():
    g = from_edges(4, [(0, 1), (1, 2), (2, 3)])
    assert g.m == 3
    assert g.degree(1) == 2
    assert sorted(g.neighbors(1)) == [0, 2]
    assert g.degree_sequence() == (1, 1, 2, 2)
    assert g.has_edge(0, 1) and not g.has_edge(0, 2)


def test_validation():
    with pytest.raises(GraphError):
        Graph(2, (1, 0))  # asymmetric
    with pytest.raises(GraphError):
        from_edges(3, [(0, 0)])  # loop
    with pytest.raises(GraphError):
        from_edges(2, [(0, 5)])  # out of range


def test_constructors():
    assert path_graph(5).m == 4
    assert cycle_graph(5).m == 5
    assert complete_graph(4).m == 6
    assert empty_graph(3).m == 0
    b = bull_graph()
    assert b.n == 5 and b.m == 5
    assert sorted(b.degree_sequence()) == [1, 1, 2, 3, 3]


def test_complement_involution(rng):
    for _ in range(20):
        g = random_graph(rng.randint(1, 12), 0.5, rng)
        assert complement(complement(g)) == g


def test_induced_relabels():
    g = path_graph(5)
    h = induced(g, [0, 2, 3])
    assert h.n == 3
    assert h.has_edge(1, 2) and not h.has_edge(0, 1)


def test_subgraph_code_roundtrip(rng):
    for _ in range(20):
        g = random_graph(6, 0.5, rng)
        code = subgraph_code(g, range(6))
        assert graph_from_code(6, code) == g


def _brute_canon(g):
    best = None
    for perm in itertools.permutations(range(g.n)):
        bits = tuple(1 if g.has_edge(perm[i], perm[j]) else 0
                     for j in range(g.n) for i in range(j))
        if best is None or bits < best:
            best = bits
    return best


def test_canonical_code_minimal_exhaustive():
    # against permutation brute force on every labeled graph, n <= 4
    import numpy as np
    for n in range(1, 5):
        for g in all_labeled_graphs(n):
            code = canonical_code(g)
            nb = n * (n - 1) // 2
            bits = tuple(int(x) for x in
                         np.unpackbits(np.frombuffer(code[1:], np.uint8))[:nb])
            assert bits == _brute_canon(g)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 7), st.randoms(use_true_random=False))
def test_canonical_code_permutation_invariant(n, rnd):
    g = random_graph(n, 0.5, rnd)
    perm = list(range(n))
    rnd.shuffle(perm)
    adj = [0] * n
    for u, v in g.edges():
        adj[perm[u]] |= 1 << perm[v]
        adj[perm[v]] |= 1 << perm[u]
    assert canonical_code(g) == canonical_code(Graph(n, tuple(adj)))


def test_isomorphism_agrees_with_canonical(rng):
    for _ in range(100):
        g = random_graph(6, 0.5, rng)
        h = random_graph(6, 0.5, rng)
        assert are_isomorphic(g, h) == (canonical_code(g) == canonical_code(h))


def test_bipartite():
    sides = is_bipartite(path_graph(4))
    assert sides is not None and {len(s) for s in sides} == {2}
    assert is_bipartite(cycle_graph(5)) is None
    assert is_bipartite(cycle_graph(6)) is not None


def test_connectivity_and_trees():
    assert is_connected(path_graph(4))
    assert not is_connected(empty_graph(2))
    assert is_tree(path_graph(7))
    assert not is_tree(cycle_graph(4))
