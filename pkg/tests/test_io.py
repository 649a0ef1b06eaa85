import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphsparse.graph import Graph, complete_graph, path_graph
from graphsparse.io import (
    FormatError,
    decode_edgelist,
    decode_graph6,
    encode_dot,
    encode_edgelist,
    encode_graph6,
    parse_graph,
)

from conftest import random_graph


def test_known_encodings():
    assert encode_graph6(complete_graph(3)) == "Bw"
    assert encode_graph6(Graph(1, (0,))) == "@"
    assert decode_graph6("Bw") == complete_graph(3)
    assert decode_graph6("@").n == 1


def test_header_prefix_accepted():
    assert decode_graph6(">>graph6<<Bw") == complete_graph(3)


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 20), st.randoms(use_true_random=False))
def test_graph6_roundtrip(n, rnd):
    g = random_graph(n, 0.4, rnd)
    assert decode_graph6(encode_graph6(g)) == g


def test_graph6_rejects_garbage():
    for bad in ["", "B", "Bw junk", "~??", chr(31) * 3]:
        with pytest.raises(FormatError):
            decode_graph6(bad)


def test_graph6_rejects_padding_bits():
    # K3 with a nonzero padding bit in the final byte
    with pytest.raises(FormatError):
        decode_graph6("Bx")


def test_edgelist_roundtrip(rng):
    for _ in range(20):
        g = random_graph(rng.randint(1, 10), 0.5, rng)
        assert decode_edgelist(encode_edgelist(g)) == g


def test_edgelist_comments_and_errors():
    text = "# a path\n3 2\n0 1\n1 2\n"
    g = decode_edgelist(text)
    assert g == path_graph(3)
    with pytest.raises(FormatError):
        decode_edgelist("3 2\n0 1\n")  # fewer edges than declared


def test_parse_auto():
    assert parse_graph("Bw").n == 3
    assert parse_graph("2 1\n0 1\n").n == 2


def test_dot_output():
    text = encode_dot(path_graph(3))
    assert text.startswith("graph ")
    assert "0 -- 1" in text and "1 -- 2" in text
