import itertools

import pytest

from graphsparse.graph import Graph, GraphError, canonical_code, cycle_graph
from graphsparse.io import decode_graph6, encode_graph6
from graphsparse.patterns import P5, P5_COP5, P5_COP5_BULL, PatternFamily
from graphsparse.smallgraphs import (
    KNOWN_COUNTS,
    all_graphs,
    graph_count,
    read_graph6_stream,
    verify_classifier,
    verify_recognizer,
    verify_theorem_c5,
)

from conftest import all_labeled_graphs


def test_counts_match_frozen_values():
    for n in range(1, 8):
        assert graph_count(n) == KNOWN_COUNTS[n - 1]


def test_counts_match_naive_dedupe_oracle():
    # independent labeled enumeration, feasible through n = 6
    for n in range(1, 7):
        classes = {canonical_code(g) for g in all_labeled_graphs(n)}
        assert len(classes) == KNOWN_COUNTS[n - 1]


def test_no_duplicate_codes_and_roundtrip():
    for n in range(1, 8):
        codes = set()
        for g in all_graphs(n):
            code = canonical_code(g)
            assert code not in codes
            codes.add(code)
            assert decode_graph6(encode_graph6(g)) == g


def test_deterministic_order():
    a = [encode_graph6(g) for g in all_graphs(6)]
    b = [encode_graph6(g) for g in all_graphs(6)]
    assert a == b


def test_range_validation():
    with pytest.raises(GraphError):
        list(all_graphs(0))
    with pytest.raises(GraphError):
        list(all_graphs(10))


def test_read_graph6_stream():
    lines = ["# comment", encode_graph6(cycle_graph(5)), "", "Bw"]
    graphs = list(read_graph6_stream(lines))
    assert [g.n for g in graphs] == [5, 3]


def test_verify_theorem_c5_small():
    report = verify_theorem_c5(6)
    assert report.success
    assert report.graphs_scanned == sum(KNOWN_COUNTS[4:6])


def test_verify_theorem_c5_mutated_family_finds_counterexamples():
    # dropping co-P5 from the family must break the theorem
    weakened = PatternFamily("p5-only", 5, (("P5", P5),))
    report = verify_theorem_c5(6, family=weakened)
    assert not report.success
    assert report.counterexamples


def test_verify_classifier_small():
    assert verify_classifier(6, P5_COP5_BULL).success
    assert verify_classifier(6, P5_COP5).success


def test_verify_recognizer_small():
    report = verify_recognizer(6)
    assert report.success
    assert report.graphs_scanned == sum(KNOWN_COUNTS[:6])


def test_verify_on_external_stream():
    lines = [encode_graph6(g) for g in all_graphs(6)]
    report = verify_recognizer(6, graphs=read_graph6_stream(lines))
    assert report.success and report.graphs_scanned == len(lines)


def test_report_json():
    doc = verify_recognizer(4).to_json()
    assert doc["success"] is True
    assert doc["counterexamples"] == []
    assert doc["elapsed_seconds"] >= 0
