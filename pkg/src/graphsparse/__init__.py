"""Toolkit for recognizing, classifying, and optimizing over the two
five-vertex-pattern sparse graph families {P5, co-P5} and {P5, co-P5, bull}."""

from .graph import (
    Graph,
    GraphError,
    VertexSet,
    are_isomorphic,
    canonical_code,
    complement,
    from_edges,
    induced,
    is_bipartite,
    vset,
)
from .io import decode_graph6, encode_graph6

__version__ = "0.1.0"
