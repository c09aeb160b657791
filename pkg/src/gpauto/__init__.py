"""Graph products of directly-indecomposable cyclic groups: word problem,
partial-conjugation automorphism calculus, and structural analysis."""

from .graphs import INF, LabeledGraph, SilWitness, parse_graph, format_graph, load_graph

__all__ = [
    "INF",
    "LabeledGraph",
    "SilWitness",
    "parse_graph",
    "format_graph",
    "load_graph",
]

__version__ = "0.1.0"
