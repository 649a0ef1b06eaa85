import itertools
import random
from functools import lru_cache

import pytest

from graphsparse.classify import CapExceededError, make_bundle
from graphsparse.graph import Graph, GraphError, complement, complete_graph, \
    cycle_graph, from_edges, path_graph
from graphsparse.optimize import (
    Solution,
    WeightedGraph,
    clique_cover,
    max_weight_clique,
    max_weight_stable,
    multichromatic,
)

from conftest import random_graph


def brute_clique(wg: WeightedGraph) -> int:
    g = wg.graph
    best = 0
    for r in range(g.n + 1):
        for s in itertools.combinations(range(g.n), r):
            if all(g.has_edge(u, v) for u, v in itertools.combinations(s, 2)):
                best = max(best, sum(wg.w[v] for v in s))
    return best


def brute_multichromatic(wg: WeightedGraph) -> int:
    """Exact demand-weighted set cover over maximal stable sets."""
    g = wg.graph
    n = g.n
    stables = [sum(1 << v for v in s)
               for r in range(1, n + 1)
               for s in itertools.combinations(range(n), r)
               if all(not g.has_edge(u, v)
                      for u, v in itertools.combinations(s, 2))]
    maximal = [m for m in stables
               if not any(o != m and o & m == m for o in stables)]

    @lru_cache(maxsize=None)
    def solve(rem: tuple) -> int:
        if not any(rem):
            return 0
        v = next(i for i, x in enumerate(rem) if x)
        return min(1 + solve(tuple(max(0, rem[i] - 1) if m >> i & 1 else rem[i]
                                   for i in range(n)))
                   for m in maximal if m >> v & 1)

    return solve(tuple(wg.w))


def test_weighted_graph_validation():
    with pytest.raises(GraphError):
        WeightedGraph(path_graph(3), (1, 2))
    with pytest.raises(GraphError):
        WeightedGraph(path_graph(2), (1, -1))


def test_trivial_examples():
    assert max_weight_clique(WeightedGraph.unit(cycle_graph(5))).value == 2
    assert max_weight_stable(WeightedGraph.unit(path_graph(5))).value == 3
    assert multichromatic(WeightedGraph.unit(complete_graph(4))).value == 4
    assert clique_cover(WeightedGraph.unit(complete_graph(4))).value == 1


def test_derived_examples():
    # join of an edge with a 5-cycle
    edges = [(0, 1)] + [(2 + i, 2 + (i + 1) % 5) for i in range(5)]
    edges += [(a, b) for a in (0, 1) for b in range(2, 7)]
    g = from_edges(7, edges)
    assert max_weight_clique(WeightedGraph.unit(g)).value == 4

    assert max_weight_stable(WeightedGraph.unit(make_bundle(4))).value == 5
    wg = WeightedGraph(cycle_graph(5), (3, 1, 1, 1, 1))
    assert max_weight_stable(wg).value == 4


def test_random_against_brute_force(rng):
    for _ in range(60):
        n = rng.randint(1, 7)
        g = random_graph(n, rng.choice([0.25, 0.5, 0.75]), rng)
        w = tuple(rng.randint(1, 8) for _ in range(n))
        wg = WeightedGraph(g, w)
        assert max_weight_clique(wg).value == brute_clique(wg)
        assert max_weight_stable(wg).value == \
            brute_clique(WeightedGraph(complement(g), w))
        assert multichromatic(wg).value == brute_multichromatic(wg)
        assert clique_cover(wg).value == \
            brute_multichromatic(WeightedGraph(complement(g), w))


def test_duality(rng):
    for _ in range(30):
        g = random_graph(rng.randint(1, 8), 0.5, rng)
        w = tuple(rng.randint(0, 6) for _ in range(g.n))
        wg = WeightedGraph(g, w)
        assert max_weight_stable(wg).value == \
            max_weight_clique(wg.complement()).value


def test_monotonicity(rng):
    for _ in range(25):
        g = random_graph(7, 0.4, rng)
        non_edges = [(u, v) for u in range(7) for v in range(u + 1, 7)
                     if not g.has_edge(u, v)]
        if not non_edges:
            continue
        u, v = rng.choice(non_edges)
        h = from_edges(7, list(g.edges()) + [(u, v)])
        w = tuple(rng.randint(1, 5) for _ in range(7))
        assert max_weight_stable(WeightedGraph(h, w)).value <= \
            max_weight_stable(WeightedGraph(g, w)).value
        assert max_weight_clique(WeightedGraph(h, w)).value >= \
            max_weight_clique(WeightedGraph(g, w)).value


def test_certificates_are_concrete(rng):
    for _ in range(25):
        g = random_graph(rng.randint(2, 8), 0.5, rng)
        w = tuple(rng.randint(1, 6) for _ in range(g.n))
        wg = WeightedGraph(g, w)
        sol = max_weight_clique(wg)
        assert sum(w[v] for v in sol.vertices) == sol.value
        col = multichromatic(wg)
        for v in range(g.n):
            assert len(col.colors[v]) == w[v]
        for u, v in g.edges():
            assert not (col.colors[u] & col.colors[v])


def test_c5_multicoloring_formula(rng):
    for _ in range(30):
        d = tuple(rng.randint(0, 9) for _ in range(5))
        wg = WeightedGraph(cycle_graph(5), d)
        adj_max = max(d[i] + d[(i + 1) % 5] for i in range(5))
        expected = max(adj_max, -(-sum(d) // 2)) if any(d) else 0
        assert multichromatic(wg).value == expected


def test_large_composed_instance():
    # bundle of 50 arms: tree, solved entirely by the structural fast paths
    g = make_bundle(50, True)
    wg = WeightedGraph.unit(g)
    assert max_weight_clique(wg).value == 2
    assert max_weight_stable(wg).value == 51
    assert multichromatic(wg).value == 2


def test_clique_cap_fails_loudly():
    g = random_graph(30, 0.5, random.Random(5))
    # a dense random graph this size decomposes to a single prime quotient
    from graphsparse.modular import is_prime
    assert is_prime(g)
    with pytest.raises(CapExceededError):
        max_weight_clique(WeightedGraph.unit(g))


def test_solution_json():
    sol = max_weight_clique(WeightedGraph.unit(complete_graph(3)))
    doc = sol.to_json()
    assert doc["objective"] == 3 and doc["vertices"] == [0, 1, 2]
    doc = multichromatic(WeightedGraph.unit(path_graph(2))).to_json()
    assert doc["kind"] == "coloring" and set(doc["colors"]) == {"0", "1"}
