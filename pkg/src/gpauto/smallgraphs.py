"""Exhaustive and randomized small-graph generators for the verification
suites: all labeled connected graphs on n vertices, connected isomorphism
representatives (via the networkx atlas, n <= 7), and random trees.
"""

from __future__ import annotations

import itertools
import random

from .graphs import LabeledGraph, is_connected

_EDGE_SLOTS = {
    n: [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)]
    for n in range(1, 8)
}


def all_labeled_connected_graphs(n: int, orders=None):
    """Yield every connected graph on vertex set 1..n, one per edge subset."""
    if orders is None:
        orders = [2] * n
    slots = _EDGE_SLOTS[n]
    for picks in itertools.product((False, True), repeat=len(slots)):
        edges = [e for e, keep in zip(slots, picks) if keep]
        g = LabeledGraph(n, edges, orders)
        if is_connected(g):
            yield g


def connected_representatives(max_n: int, orders=None):
    """Connected isomorphism representatives with 1..max_n vertices (the
    networkx graph atlas covers up to 7)."""
    import networkx as nx

    if max_n > 7:
        raise ValueError("atlas only covers up to 7 vertices")
    out = []
    for ag in nx.graph_atlas_g()[1:]:
        n = ag.number_of_nodes()
        if n < 1 or n > max_n:
            continue
        if not nx.is_connected(ag):
            continue
        edges = [(a + 1, b + 1) for (a, b) in ag.edges()]
        out.append(LabeledGraph(n, edges, list(orders[:n]) if orders else [2] * n))
    return out


def random_tree(rng: random.Random, n: int, orders=None) -> LabeledGraph:
    """Uniform-ish random tree on 1..n: each vertex above 1 attaches to a
    uniformly chosen earlier vertex, then labels are shuffled."""
    relabel = list(range(1, n + 1))
    rng.shuffle(relabel)
    edges = []
    for v in range(2, n + 1):
        u = rng.randint(1, v - 1)
        a, b = relabel[u - 1], relabel[v - 1]
        edges.append((min(a, b), max(a, b)))
    return LabeledGraph(n, edges, orders or [2] * n)


def random_connected_graph(rng: random.Random, n: int, p: float = 0.5, orders=None) -> LabeledGraph:
    """Random connected graph: a random tree plus independent extra edges."""
    tree = random_tree(rng, n, orders)
    edges = set(tree.edges)
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            if rng.random() < p:
                edges.add((a, b))
    return LabeledGraph(n, sorted(edges), orders or [2] * n)
