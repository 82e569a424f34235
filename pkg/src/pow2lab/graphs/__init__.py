"""Graphs, graph6 interchange, canonical forms, generation and containment."""

from .canon import are_isomorphic, canonical_form, canonical_graph6, canonical_labeling
from .core import (
    Graph,
    complete_graph,
    components,
    cycle_graph,
    disjoint_union,
    empty_graph,
    is_bipartite,
    is_c4_free,
    is_connected,
    path_graph,
    petersen_graph,
    star_graph,
)
from .generate import CONNECTED_C4_FREE, GenConstraints, extend_with_vertex, generate
from .graph6 import Graph6Error, parse_graph6, read_graph6_stream, write_graph6, write_graph6_stream
from .subgraph import contains_any, contains_subgraph

__all__ = [
    "CONNECTED_C4_FREE",
    "GenConstraints",
    "Graph",
    "Graph6Error",
    "are_isomorphic",
    "canonical_form",
    "canonical_graph6",
    "canonical_labeling",
    "complete_graph",
    "components",
    "contains_any",
    "contains_subgraph",
    "cycle_graph",
    "disjoint_union",
    "empty_graph",
    "extend_with_vertex",
    "generate",
    "is_bipartite",
    "is_c4_free",
    "is_connected",
    "parse_graph6",
    "path_graph",
    "petersen_graph",
    "read_graph6_stream",
    "star_graph",
    "write_graph6",
    "write_graph6_stream",
]
