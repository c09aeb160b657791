"""Labeled simplicial graphs and the graph computations the automorphism
calculus consumes: links, stars, components of star complements, maximal
cliques, separating intersections of links, coning, graph predicates and
bounded label-preserving automorphism search.

Vertices are indexed 1..n.  Adjacency is stored as one bitmask per vertex
(bit j of adj[i] set iff {i,j} is an edge); Python integers make this work
for any n, with the fast path being plain word-sized masks for n <= 64.
Every returned vertex set is a frozenset; lists of sets are sorted by least
element so reports and fixtures are deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import isqrt

INF = math.inf

Order = float  # prime-power int, or INF


class GraphFormatError(ValueError):
    """Raised when graph text input violates the file format."""


def is_prime_power(q: int) -> bool:
    """True iff q = p^a for a prime p and a >= 1."""
    if q < 2:
        return False
    for p in range(2, isqrt(q) + 1):
        if q % p == 0:
            while q % p == 0:
                q //= p
            return q == 1
    return True


def _bits(mask: int):
    """Yield the set bit positions of mask in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _mask_of(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class LabeledGraph:
    """A finite simplicial graph together with a vertex order map.

    Orders are prime powers (directly-indecomposable finite cyclic vertex
    groups) or INF (infinite cyclic).  Instances are immutable after
    construction and safe to share between threads.
    """

    __slots__ = ("n", "edges", "orders", "adj", "full_mask", "_dist")

    def __init__(self, n: int, edges, orders):
        if n < 1:
            raise ValueError("graph needs at least one vertex")
        orders = tuple(orders)
        if len(orders) != n:
            raise ValueError(f"expected {n} orders, got {len(orders)}")
        for o in orders:
            if o is INF or o == INF:
                continue
            if not (isinstance(o, int) and is_prime_power(o)):
                raise ValueError(f"order {o!r} is not a prime power or inf")
        canonical = []
        seen = set()
        adj = [0] * (n + 1)
        for e in edges:
            a, b = e
            if not (1 <= a <= n and 1 <= b <= n):
                raise ValueError(f"edge {e} out of range 1..{n}")
            if a == b:
                raise ValueError(f"self-loop at vertex {a}")
            if a > b:
                a, b = b, a
            if (a, b) in seen:
                raise ValueError(f"duplicate edge {(a, b)}")
            seen.add((a, b))
            canonical.append((a, b))
            adj[a] |= 1 << b
            adj[b] |= 1 << a
        self.n = n
        self.edges = tuple(sorted(canonical))
        self.orders = (None,) + orders  # 1-indexed
        self.adj = tuple(adj)
        self.full_mask = ((1 << (n + 1)) - 1) & ~1
        self._dist = None

    def check_vertex(self, i: int) -> int:
        if not (isinstance(i, int) and 1 <= i <= self.n):
            raise ValueError(f"vertex index {i!r} out of range 1..{self.n}")
        return i

    def order(self, i: int) -> Order:
        return self.orders[self.check_vertex(i)]

    def adjacent(self, i: int, j: int) -> bool:
        return bool((self.adj[i] >> j) & 1)

    def degree(self, i: int) -> int:
        return self.adj[self.check_vertex(i)].bit_count()

    def link_mask(self, i: int) -> int:
        return self.adj[self.check_vertex(i)]

    def star_mask(self, i: int) -> int:
        return self.adj[self.check_vertex(i)] | (1 << i)

    def vertices(self) -> range:
        return range(1, self.n + 1)

    def all_orders_finite(self) -> bool:
        return all(o is not INF and o != INF for o in self.orders[1:])

    def is_racg(self) -> bool:
        return all(o == 2 for o in self.orders[1:])

    def is_raag(self) -> bool:
        return all(o == INF for o in self.orders[1:])

    def distances_from(self, i: int) -> tuple:
        """BFS distances from vertex i; unreachable vertices get INF."""
        if self._dist is None:
            self._dist = [None] * (self.n + 1)
        cached = self._dist[i]
        if cached is not None:
            return cached
        dist = [INF] * (self.n + 1)
        dist[i] = 0
        frontier = [i]
        d = 0
        while frontier:
            d += 1
            nxt = []
            for v in frontier:
                for w in _bits(self.adj[v]):
                    if dist[w] is INF:
                        dist[w] = d
                        nxt.append(w)
            frontier = nxt
        dist = tuple(dist)
        self._dist[i] = dist
        return dist

    def distance(self, i: int, j: int) -> Order:
        self.check_vertex(j)
        return self.distances_from(self.check_vertex(i))[j]

    def __eq__(self, other):
        return (
            isinstance(other, LabeledGraph)
            and self.n == other.n
            and self.edges == other.edges
            and self.orders == other.orders
        )

    def __hash__(self):
        return hash((self.n, self.edges, self.orders))

    def __repr__(self):
        return f"LabeledGraph(n={self.n}, edges={list(self.edges)}, orders={list(self.orders[1:])})"


@dataclass(frozen=True)
class SilWitness:
    """A separating intersection of links: component r of the complement of
    link(i) & link(j) containing neither endpoint, for d(i,j) >= 2."""

    i: int
    j: int
    r: frozenset

    def sorted_r(self):
        return tuple(sorted(self.r))


def _components_of_mask(g: LabeledGraph, mask: int) -> list[int]:
    """Connected components (as masks) of the induced subgraph on mask,
    sorted by least vertex."""
    comps = []
    remaining = mask
    while remaining:
        seed = remaining & -remaining
        comp = seed
        frontier = seed
        while frontier:
            grow = 0
            for v in _bits(frontier):
                grow |= g.adj[v] & mask
            frontier = grow & ~comp
            comp |= frontier
        comps.append(comp)
        remaining &= ~comp
    return comps


def _set_of(mask: int) -> frozenset:
    return frozenset(_bits(mask))


def link(g: LabeledGraph, i: int) -> frozenset:
    """Vertices at distance exactly 1 from i."""
    return _set_of(g.link_mask(i))


def star(g: LabeledGraph, i: int) -> frozenset:
    """link(i) together with i itself."""
    return _set_of(g.star_mask(i))


def components_minus_star(g: LabeledGraph, i: int) -> list[frozenset]:
    """Connected components of the graph minus the closed star of i,
    sorted by least element; empty iff i is adjacent to all others."""
    mask = g.full_mask & ~g.star_mask(i)
    return [_set_of(c) for c in _components_of_mask(g, mask)]


def is_connected(g: LabeledGraph) -> bool:
    return len(_components_of_mask(g, g.full_mask)) == 1


def is_tree(g: LabeledGraph) -> bool:
    return is_connected(g) and len(g.edges) == g.n - 1


def is_clique_mask(g: LabeledGraph, mask: int) -> bool:
    for v in _bits(mask):
        if mask & ~(g.adj[v] | (1 << v)):
            return False
    return True


def is_clique(g: LabeledGraph, vertices) -> bool:
    return is_clique_mask(g, _mask_of(vertices))


def maximal_cliques(g: LabeledGraph) -> list[frozenset]:
    """All maximal cliques, each exactly once, sorted by vertex tuple.

    Bron-Kerbosch with pivoting on bitmasks; fine for the graph sizes this
    library targets (fixtures stay well under 64 vertices).
    """
    out = []

    def expand(r: int, p: int, x: int):
        if not p and not x:
            out.append(r)
            return
        pivot_pool = p | x
        pivot = next(_bits(pivot_pool))
        best = -1
        for u in _bits(pivot_pool):
            k = (p & g.adj[u]).bit_count()
            if k > best:
                best, pivot = k, u
        for v in _bits(p & ~g.adj[pivot]):
            bit = 1 << v
            expand(r | bit, p & g.adj[v], x & g.adj[v])
            p &= ~bit
            x |= bit

    expand(0, g.full_mask, 0)
    return sorted((_set_of(m) for m in out), key=sorted)


def find_sil(g: LabeledGraph) -> SilWitness | None:
    """Least witness (i, j, min r) of a separating intersection of links,
    straight from the definition; None when the graph has none."""
    for i in g.vertices():
        di = g.distances_from(i)
        for j in range(i + 1, g.n + 1):
            if di[j] < 2:
                continue
            cut = g.link_mask(i) & g.link_mask(j)
            both = (1 << i) | (1 << j)
            for comp in _components_of_mask(g, g.full_mask & ~cut):
                if not (comp & both):
                    return SilWitness(i=i, j=j, r=_set_of(comp))
    return None


def cone(g: LabeledGraph, order: Order) -> LabeledGraph:
    """Add a vertex adjacent to everything.  The cone vertex takes index
    n+1 so the minimal-index rules on original vertices are unchanged."""
    if order is not INF and order != INF:
        if not (isinstance(order, int) and is_prime_power(order)):
            raise ValueError(f"order {order!r} is not a prime power or inf")
    new = g.n + 1
    edges = list(g.edges) + [(v, new) for v in g.vertices()]
    return LabeledGraph(new, edges, g.orders[1:] + (order,))


def delta_class(g: LabeledGraph, i: int) -> frozenset:
    """All j whose star equals the star of i.  Always a clique."""
    si = g.star_mask(i)
    members = [j for j in g.vertices() if g.star_mask(j) == si]
    assert is_clique(g, members)
    return frozenset(members)


def induced_subgraph(g: LabeledGraph, vertices):
    """Full subgraph on the given vertices, relabeled 1..k preserving the
    index order.  Returns (subgraph, old_of_new) with old_of_new[0] unused."""
    old = sorted(g.check_vertex(v) for v in set(vertices))
    if not old:
        raise ValueError("induced subgraph needs at least one vertex")
    new_of_old = {o: k + 1 for k, o in enumerate(old)}
    edges = [
        (new_of_old[a], new_of_old[b])
        for (a, b) in g.edges
        if a in new_of_old and b in new_of_old
    ]
    sub = LabeledGraph(len(old), edges, tuple(g.orders[o] for o in old))
    return sub, (None, *old)


def has_chordless_four_cycle(g: LabeledGraph) -> bool:
    for a in g.vertices():
        for c in range(a + 1, g.n + 1):
            if g.adjacent(a, c):
                continue
            common = g.adj[a] & g.adj[c]
            for b in _bits(common):
                if common & ~(g.adj[b] | (1 << b)):
                    return True
    return False


def _has_triangle(g: LabeledGraph) -> bool:
    return any(g.adj[a] & g.adj[b] for (a, b) in g.edges)


def _has_four_cycle(g: LabeledGraph) -> bool:
    for a in g.vertices():
        for c in range(a + 1, g.n + 1):
            if (g.adj[a] & g.adj[c]).bit_count() >= 2:
                return True
    return False


@dataclass(frozen=True)
class PredicateReport:
    leaves: frozenset
    center_vertices: frozenset
    four_cycle_chord_ok: bool
    girth_ge_5_and_min_valence_2: bool
    link_containment_pairs: tuple
    star_containment_pairs: tuple
    aut_star_equals_aut: str  # "yes" or "unknown"


def graph_predicates(g: LabeledGraph) -> PredicateReport:
    """The decidable graph conditions the structural results hinge on.

    aut_star_equals_aut reports "yes" only under the printed sufficient
    conditions (all orders finite, or the two infinite-order cases); there
    is no decidable "no", so the other outcome is "unknown".
    """
    leaves = frozenset(v for v in g.vertices() if g.degree(v) == 1)
    center = frozenset(v for v in g.vertices() if g.star_mask(v) == g.full_mask)
    link_pairs = tuple(
        (i, j)
        for i in g.vertices()
        for j in g.vertices()
        if i != j and not g.adjacent(i, j) and not (g.adj[i] & ~g.adj[j])
    )
    star_pairs = tuple(
        (i, j)
        for i in g.vertices()
        for j in g.vertices()
        if i != j and not (g.star_mask(i) & ~g.star_mask(j))
    )
    girth_ok = (
        all(g.degree(v) >= 2 for v in g.vertices())
        and not _has_triangle(g)
        and not _has_four_cycle(g)
    )
    # link_pairs is already restricted to non-adjacent pairs, so the second
    # sufficient condition is exactly "no such pair exists".
    yes = g.all_orders_finite()
    if not yes and g.is_raag():
        yes = not link_pairs or girth_ok
    return PredicateReport(
        leaves=leaves,
        center_vertices=center,
        four_cycle_chord_ok=not has_chordless_four_cycle(g),
        girth_ge_5_and_min_valence_2=girth_ok,
        link_containment_pairs=link_pairs,
        star_containment_pairs=star_pairs,
        aut_star_equals_aut="yes" if yes else "unknown",
    )


def labeled_graph_automorphisms(g: LabeledGraph, bound: int = 12) -> list[tuple]:
    """All vertex permutations preserving edges and orders, as tuples sigma
    with sigma[i] the image of i (sigma[0] = 0).  Backtracking search, so
    the vertex count is capped by `bound`."""
    if g.n > bound:
        raise ValueError(f"automorphism search bound exceeded: {g.n} > {bound}")
    sig = {}
    for v in g.vertices():
        sig.setdefault((g.orders[v], g.degree(v)), []).append(v)
    candidates = {
        v: sig[(g.orders[v], g.degree(v))] for v in g.vertices()
    }
    perms = []
    image = [0] * (g.n + 1)
    used = set()

    def place(v):
        if v > g.n:
            perms.append(tuple(image))
            return
        for w in candidates[v]:
            if w in used:
                continue
            ok = True
            for u in range(1, v):
                if g.adjacent(u, v) != g.adjacent(image[u], w):
                    ok = False
                    break
            if ok:
                image[v] = w
                used.add(w)
                place(v + 1)
                used.remove(w)
        image[v] = 0

    place(1)
    perms.sort()
    identity = tuple(range(g.n + 1))
    assert identity in perms
    index = set(perms)
    for p in perms[: min(len(perms), 24)]:  # spot-check closure under composition
        for q in perms[: min(len(perms), 24)]:
            comp = tuple(0 if k == 0 else p[q[k]] for k in range(g.n + 1))
            assert comp in index
    return perms


def format_order(o: Order) -> str:
    return "inf" if o is INF or o == INF else str(o)


def parse_order(token: str) -> Order:
    if token == "inf":
        return INF
    try:
        q = int(token)
    except ValueError:
        raise GraphFormatError(f"bad order token {token!r}") from None
    if not is_prime_power(q):
        raise GraphFormatError(f"order {q} is not a prime power")
    return q


def parse_graph(text: str) -> LabeledGraph:
    """Parse the labeled-graph text format:

        vertices <N>
        orders <t1> ... <tN>      (prime powers or the literal `inf`)
        edges <a-b> <c-d> ...     (1-based, a<b; may be empty)

    Blank lines and lines starting with `#` are ignored.
    """
    lines = [
        ln.strip()
        for ln in text.splitlines()
        if ln.strip() and not ln.strip().startswith("#")
    ]
    if len(lines) != 3:
        raise GraphFormatError("expected exactly 3 content lines (vertices/orders/edges)")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "vertices":
        raise GraphFormatError("line 1 must be: vertices <N>")
    try:
        n = int(head[1])
    except ValueError:
        raise GraphFormatError(f"bad vertex count {head[1]!r}") from None
    if n < 1:
        raise GraphFormatError("vertex count must be >= 1")
    otoks = lines[1].split()
    if not otoks or otoks[0] != "orders":
        raise GraphFormatError("line 2 must be: orders <t1> ... <tN>")
    if len(otoks) != n + 1:
        raise GraphFormatError(f"expected {n} orders, got {len(otoks) - 1}")
    orders = [parse_order(t) for t in otoks[1:]]
    etoks = lines[2].split()
    if not etoks or etoks[0] != "edges":
        raise GraphFormatError("line 3 must be: edges <a-b> ...")
    edges = []
    for t in etoks[1:]:
        parts = t.split("-")
        if len(parts) != 2:
            raise GraphFormatError(f"bad edge token {t!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"bad edge token {t!r}") from None
        if not a < b:
            raise GraphFormatError(f"edge {t!r} must have a < b")
        edges.append((a, b))
    try:
        return LabeledGraph(n, edges, orders)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None


def format_graph(g: LabeledGraph) -> str:
    """Bit-exact serialization of the three-line format."""
    orders = " ".join(format_order(o) for o in g.orders[1:])
    edges = " ".join(f"{a}-{b}" for (a, b) in g.edges)
    return f"vertices {g.n}\norders {orders}\nedges{(' ' + edges) if edges else ''}\n"


def load_graph(path) -> LabeledGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph(fh.read())
