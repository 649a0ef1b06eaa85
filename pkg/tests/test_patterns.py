import itertools

import pytest

from graphsparse.graph import (
    Graph,
    are_isomorphic,
    bull_graph,
    complement,
    cycle_graph,
    from_edges,
    path_graph,
)
from graphsparse.patterns import (
    BULL,
    C5,
    CO_P5,
    FAMILIES,
    P4,
    P5,
    P5_COP5,
    P5_COP5_BULL,
    PatternFamily,
    c5_attachment_type,
    contains_induced,
    is_free,
    occurrences,
    participating_vertices,
    pattern_name,
    sparse_oracle,
    window_verdict,
)

from conftest import random_graph


def test_pattern_constants():
    assert are_isomorphic(P5, path_graph(5))
    assert are_isomorphic(CO_P5, complement(path_graph(5)))
    assert are_isomorphic(BULL, bull_graph())
    assert are_isomorphic(C5, cycle_graph(5))
    assert pattern_name(path_graph(5)) == "P5"
    assert pattern_name(complement(path_graph(5))) == "co-P5"


def test_families():
    assert set(FAMILIES) == {"p5-cop5", "p5-cop5-bull"}
    assert len(P5_COP5.members) == 2
    assert len(P5_COP5_BULL.members) == 3
    assert P5_COP5.p == 5


def _brute_occurrences(g, pattern):
    out = []
    for sub in itertools.combinations(range(g.n), pattern.n):
        h = Graph(g.n, g.adj)
        from graphsparse.graph import induced
        if are_isomorphic(induced(g, sub), pattern):
            out.append(frozenset(sub))
    return out


def test_occurrences_match_brute(rng):
    for _ in range(25):
        g = random_graph(rng.randint(5, 8), 0.5, rng)
        for pat in (P5, CO_P5, BULL, C5):
            got = [frozenset(o.vertices) for o in occurrences(g, pat)]
            assert got == _brute_occurrences(g, pat)
            assert got == sorted(got, key=sorted)  # ascending lex


def test_contains_induced_matches_occurrences(rng):
    for _ in range(40):
        g = random_graph(rng.randint(4, 9), 0.5, rng)
        for pat in (P5, BULL):
            assert contains_induced(g, pat) == bool(occurrences(g, pat))


def test_is_free():
    assert is_free(path_graph(4), [P5, CO_P5])
    assert not is_free(path_graph(5), [P5, CO_P5])


def test_p6_is_first_violation():
    v = sparse_oracle(path_graph(6), P5_COP5)
    assert not v.sparse
    assert v.window == frozenset(range(6))
    names = {o.pattern for o in (v.first, v.second)}
    assert names == {"P5"}


def test_small_graphs_vacuously_sparse():
    for n in range(6):
        g = random_graph(n, 0.5, __import__("random").Random(n))
        assert sparse_oracle(g, P5_COP5).sparse


def test_c5_plus_universal_vertex_sparse():
    g = from_edges(6, [(i, (i + 1) % 5) for i in range(5)] +
                   [(5, i) for i in range(5)])
    assert sparse_oracle(g, P5_COP5).sparse
    assert sparse_oracle(g, P5_COP5_BULL).sparse


def _brute_window_count(g, window, family):
    table = family.hit_table()
    from graphsparse.graph import subgraph_code
    return sum(1 for sub in itertools.combinations(sorted(window), 5)
               if table[subgraph_code(g, sub)])


def test_oracle_matches_naive_scan(rng):
    for _ in range(30):
        g = random_graph(rng.randint(6, 9), 0.5, rng)
        for fam in (P5_COP5, P5_COP5_BULL):
            v = sparse_oracle(g, fam)
            naive = all(_brute_window_count(g, w, fam) <= 1
                        for w in itertools.combinations(range(g.n), 6))
            assert v.sparse == naive
            if not v.sparse:
                assert _brute_window_count(g, v.window, fam) >= 2


def test_window_verdict():
    v = window_verdict(path_graph(7), (0, 1, 2, 3, 4, 5), P5_COP5)
    assert not v.sparse
    assert window_verdict(path_graph(7), (0, 1, 2, 3, 4, 6), P5_COP5).sparse


def test_attachment_types():
    cyc = tuple(range(5))
    def with_hits(hits):
        return from_edges(6, [(i, (i + 1) % 5) for i in range(5)] +
                          [(5, i) for i in hits])
    assert c5_attachment_type(with_hits([]), cyc, 5) == "independent"
    assert c5_attachment_type(with_hits(range(5)), cyc, 5) == "total"
    assert c5_attachment_type(with_hits([0, 2]), cyc, 5) == "two_nonadjacent"
    assert c5_attachment_type(with_hits([0, 1, 2]), cyc, 5) == "three_consecutive"
    assert c5_attachment_type(with_hits([0]), cyc, 5) == "forbidden"
    assert c5_attachment_type(with_hits([0, 1]), cyc, 5) == "forbidden"
    assert c5_attachment_type(with_hits([0, 1, 3]), cyc, 5) == "forbidden"


def test_attachment_validates_cycle():
    with pytest.raises(Exception):
        c5_attachment_type(path_graph(6), tuple(range(5)), 5)


def test_participating_vertices():
    g = path_graph(6)
    assert participating_vertices(g, P5_COP5) == frozenset(range(6))
    assert participating_vertices(path_graph(4), P5_COP5) == frozenset()


def test_family_rejects_bad_members():
    with pytest.raises(Exception):
        PatternFamily("bad", 5, (("P4", P4),))  # wrong order
    with pytest.raises(Exception):
        PatternFamily("dup", 5, (("a", P5), ("b", path_graph(5))))
