import random

from graphsparse.classify import make_bundle
from graphsparse.graph import Graph, complement, cycle_graph, from_edges, path_graph
from graphsparse.patterns import P5_COP5, P5_COP5_BULL, sparse_oracle, window_verdict
from graphsparse.recognize import ORACLE_CAP, is_sparse, recognize_both

from conftest import random_graph


def test_matches_oracle_random(rng):
    for _ in range(200):
        g = random_graph(rng.randint(1, 9), rng.choice([0.2, 0.4, 0.6]), rng)
        for fam in (P5_COP5, P5_COP5_BULL):
            rep = is_sparse(g, fam)
            assert rep.sparse == sparse_oracle(g, fam).sparse
            if not rep.sparse:
                w = rep.witness
                assert w is not None and not w.sparse
                assert not window_verdict(g, sorted(w.window), fam).sparse


def test_small_graphs_always_members():
    for n in range(1, 6):
        g = random_graph(n, 0.5, random.Random(n))
        assert is_sparse(g, P5_COP5).sparse


def test_p6_witness():
    rep = is_sparse(path_graph(6), P5_COP5)
    assert not rep.sparse
    assert len(rep.witness.window) == 6


def test_substitution_into_c5_stays_sparse():
    # C5 is pattern-free, so every module substitution of sparse graphs works
    edges = [(0, 1), (1, 2), (2, 3)]
    for m in range(4):
        edges += [(m, 4), (m, 7)]
    edges += [(4, 5), (5, 6), (6, 7)]
    g = from_edges(8, edges)  # C5 with one vertex blown up into a P4
    assert is_sparse(g, P5_COP5).sparse


def test_twin_on_special_vertex_breaks_membership():
    b = make_bundle(40)
    adj = list(b.adj) + [0]
    adj[1] |= 1 << b.n  # duplicate an arm midpoint's neighborhood partially:
    adj[b.n] |= 1 << 1  # new pendant on vertex 1 -> vertex 2 gains a twin
    g = Graph(b.n + 1, tuple(adj))
    rep = is_sparse(g, P5_COP5)
    assert not rep.sparse and rep.witness is not None


def test_twin_on_pendant_keeps_membership():
    b = make_bundle(40, True)
    adj = list(b.adj) + [0]
    adj[0] |= 1 << b.n
    adj[b.n] |= 1 << 0  # second pendant at the center: twin of the pendant
    g = Graph(b.n + 1, tuple(adj))
    assert is_sparse(g, P5_COP5_BULL).sparse


def test_large_structural_path_skips_oracle():
    rep = is_sparse(make_bundle(100, True), P5_COP5_BULL)
    assert rep.sparse and rep.oracle_calls == 0
    rep = is_sparse(complement(make_bundle(50)), P5_COP5)
    assert rep.sparse and rep.oracle_calls == 0


def test_force_oracle_flag():
    g = make_bundle(16)  # n = 33, just above the cap
    assert g.n > ORACLE_CAP
    fast = is_sparse(g, P5_COP5)
    forced = is_sparse(g, P5_COP5, force_oracle=True)
    assert fast.sparse and forced.sparse
    assert fast.oracle_calls == 0 and forced.oracle_calls == 1


def test_recognize_both():
    reps = recognize_both(cycle_graph(5))
    assert set(reps) == {"p5-cop5", "p5-cop5-bull"}
    assert all(r.sparse for r in reps.values())


def test_large_random_rejected_fast():
    from graphsparse.patterns import FAMILIES
    g = random_graph(60, 0.5, random.Random(99))
    for name, rep in recognize_both(g).items():
        assert not rep.sparse
        assert not window_verdict(g, sorted(rep.witness.window),
                                  FAMILIES[name]).sparse
