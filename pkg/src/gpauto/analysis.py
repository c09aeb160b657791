"""Theorem-level analysis: the thirteen-case classification of pairs of
partial conjugations, the separating-intersection-of-links equivalences, the
tree-case direct-product decomposition of the conjugating outer automorphism
group, virtual cohomological dimension, hyperbolicity of the automorphism
group, and the extension-splitting criteria.

Analyses that require a connected graph cone disconnected inputs first (the
cone vertex is adjacent to everything, so it carries no partial conjugations
and the generating sets transfer verbatim); every report records whether
coning happened.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .graphs import (
    INF,
    LabeledGraph,
    SilWitness,
    _bits,
    _components_of_mask,
    _mask_of,
    _set_of,
    components_minus_star,
    cone,
    delta_class,
    find_sil,
    has_chordless_four_cycle,
    induced_subgraph,
    is_connected,
    is_tree,
    labeled_graph_automorphisms,
    link,
    maximal_cliques,
)
from .autos import (
    PartialConjugation,
    aut_equal,
    evaluate,
    link_points,
    pc_zero,
)

# Verdict list of the thirteen-case lemma: the pair commutes exactly in these.
COMMUTING_CASES = frozenset({1, 5, 7, 8, 10, 11, 12})


@dataclass(frozen=True)
class PairCase:
    number: int

    @property
    def predicted_commute(self) -> bool:
        return self.number in COMMUTING_CASES


def classify_pair(g: LabeledGraph, a: PartialConjugation, b: PartialConjugation) -> PairCase:
    """The unique case of the thirteen-case lemma for chi_{iK}, chi_{jQ}.

    Requires a connected graph (cone a disconnected one first).  The case is
    read off d(i,j), the memberships i in Q / j in K, and the relation
    between K and Q; the relations forced by the lemma are asserted.
    """
    if not is_connected(g):
        raise ValueError("pair classification requires a connected graph; cone first")
    i, K = a.operator, _mask_of(a.domain_key)
    j, Q = b.operator, _mask_of(b.domain_key)
    d = g.distance(i, j)
    if d <= 1:
        return PairCase(1)
    i_in_Q = bool((Q >> i) & 1)
    j_in_K = bool((K >> j) & 1)
    inter = K & Q
    if d == 2:
        if i_in_Q and j_in_K:
            return PairCase(2 if not inter else 3)
        if i_in_Q and not j_in_K:
            if not inter:
                return PairCase(4)
            assert not (K & ~Q) and K != Q
            return PairCase(5)
        if not i_in_Q and j_in_K:
            if not inter:
                return PairCase(6)
            assert not (Q & ~K) and K != Q
            return PairCase(7)
        if not inter:
            return PairCase(8)
        assert K == Q
        return PairCase(9)
    if not i_in_Q and not j_in_K:
        assert not inter
        return PairCase(10)
    if i_in_Q and not j_in_K:
        assert not (K & ~Q) and K != Q
        return PairCase(11)
    if not i_in_Q and j_in_K:
        assert not (Q & ~K) and K != Q
        return PairCase(12)
    assert (K | Q) == g.full_mask
    return PairCase(13)


def verify_pair_commutation(g: LabeledGraph, a: PartialConjugation, b: PartialConjugation) -> bool:
    """Brute-force commutation check by evaluating both products; the oracle
    for classify_pair's verdict."""
    return aut_equal(g, evaluate(g, [(a, 1), (b, 1)]), evaluate(g, [(b, 1), (a, 1)]))


def _sil_witness_pair(g: LabeledGraph, sil: SilWitness):
    """A non-commuting pair drawn from the canonical generating set, built
    from a SIL witness.

    Per operator, chi_{.R} is kept when the minimal vertex outside its star
    avoids R; otherwise the component holding the other endpoint is used (it
    is disjoint from R, so it dodges that minimal vertex too).  Any mix of
    these choices fails to commute (cases 9, 2/3, 4 and 6 respectively).
    """
    i, j, r = sil.i, sil.j, sil.r
    k_comp = next(c for c in components_minus_star(g, i) if j in c)
    q_comp = next(c for c in components_minus_star(g, j) if i in c)

    def pick(op, other_comp):
        outside = g.full_mask & ~g.star_mask(op)
        minimal = next(_bits(outside))
        dom = r if minimal not in r else other_comp
        return PartialConjugation(op, tuple(sorted(dom)))

    pa, pb = pick(i, k_comp), pick(j, q_comp)
    p0 = set(pc_zero(g))
    assert pa in p0 and pb in p0
    assert not verify_pair_commutation(g, pa, pb)
    return pa, pb


def _coned_for_analysis(g: LabeledGraph):
    """(graph to analyze, coned?) — connected inputs pass through."""
    if is_connected(g):
        return g, False
    return cone(g, 2), True


def out0_is_abelian(g: LabeledGraph):
    """(abelian?, witness pair or None).  Abelian iff no SIL; the witness is
    a verified non-commuting pair from the canonical generating set."""
    sil = find_sil(g)
    if sil is None:
        return True, None
    h, _ = _coned_for_analysis(g)
    sil_h = find_sil(h)
    return False, _sil_witness_pair(h, sil_h)


def out_w_finite(g: LabeledGraph):
    """Finiteness of the full outer automorphism group; meaningful only when
    every vertex order is finite, None otherwise."""
    if not g.all_orders_finite():
        return None
    return find_sil(g) is None


def component_coincidence(g: LabeledGraph, i: int, j: int, r) -> bool:
    """Both sides of the component-coincidence equivalence, computed
    independently and asserted equal: r is a component of both star
    complements iff r is a component of the link-intersection complement
    missing both endpoints."""
    if g.distance(i, j) < 2:
        raise ValueError("component coincidence requires d(i, j) >= 2")
    rset = frozenset(r)
    lhs = rset in components_minus_star(g, i) and rset in components_minus_star(g, j)
    cut = g.link_mask(i) & g.link_mask(j)
    comps = [_set_of(c) for c in _components_of_mask(g, g.full_mask & ~cut)]
    rhs = rset in comps and i not in rset and j not in rset
    assert lhs == rhs, (i, j, sorted(rset))
    return lhs


def sil_cover_check(g: LabeledGraph, i: int, j: int) -> bool:
    """In a SIL-free graph with d(i,j) = 2 the component of j off star(i),
    the component of i off star(j) and the link intersection cover all
    vertices."""
    if g.distance(i, j) != 2:
        raise ValueError("cover check requires d(i, j) = 2")
    if find_sil(g) is not None:
        raise ValueError("cover check requires a SIL-free graph")
    k_j = next(c for c in components_minus_star(g, i) if j in c)
    q_i = next(c for c in components_minus_star(g, j) if i in c)
    cover = _mask_of(k_j) | _mask_of(q_i) | (g.link_mask(i) & g.link_mask(j))
    assert cover == g.full_mask, (i, j)
    return True


@dataclass(frozen=True)
class VertexCase:
    """Shape of <L^0_i> in the tree decomposition: isomorphic to the link's
    conjugating outer group, possibly times one cyclic factor."""

    cyclic_order: object = None  # None, or the order contributing the factor
    out_link_trivial: bool = False

    @property
    def has_cyclic_factor(self) -> bool:
        return self.cyclic_order is not None


@dataclass(frozen=True)
class TreeDecomposition:
    l0_partition: dict  # i -> tuple of PartialConjugation
    per_vertex_case: dict  # i -> VertexCase
    ab_factor: tuple  # orders of the cyclic factors, by vertex index
    ab_kind: str  # "finite abelian" / "free abelian" / "abelian"
    link_sets: dict  # i -> sorted tuple of link vertices


def tree_decomposition(g: LabeledGraph) -> TreeDecomposition:
    """Direct-product decomposition of the conjugating outer automorphism
    group when the graph is a tree with at least three vertices.

    Every partial conjugation then has a unique link point, so the sets
    L^0_i partition the canonical generating set; <L^0_i> is the link's
    group, with one extra cyclic factor of order m(k1) exactly when the
    minimal vertex outside star(k1) lies outside the link (k1 the least
    link vertex).
    """
    if g.n < 3 or not is_tree(g):
        raise ValueError("tree decomposition requires a tree with >= 3 vertices")
    p0 = pc_zero(g)
    partition = {i: [] for i in g.vertices()}
    for pc in p0:
        pts = link_points(g, pc)
        assert len(pts) == 1, (pc, sorted(pts))
        partition[next(iter(pts))].append(pc)
    assert sum(len(v) for v in partition.values()) == len(p0)

    cases = {}
    ab = []
    for i in g.vertices():
        li = sorted(link(g, i))
        k1 = li[0]
        if len(li) == 1:
            assert partition[i] == []
            cases[i] = VertexCase(cyclic_order=None, out_link_trivial=True)
            continue
        sub, _ = induced_subgraph(g, li)
        trivial = not pc_zero(sub)
        minimal_outside = next(_bits(g.full_mask & ~g.star_mask(k1)))
        if minimal_outside == li[1]:
            cases[i] = VertexCase(cyclic_order=None, out_link_trivial=trivial)
        else:
            cases[i] = VertexCase(cyclic_order=g.orders[k1], out_link_trivial=trivial)
            ab.append((i, g.orders[k1]))

    # cross-check the cyclic factors against the minimal-link-vertex rule
    # (the factor at i exists iff the least link vertex k has its minimal
    # outside vertex beyond the link; leaves contribute nothing)
    kset = []
    for i in g.vertices():
        li = link(g, i)
        if len(li) < 2:
            continue
        k = min(li)
        outside = g.full_mask & ~g.star_mask(k)
        if outside and next(_bits(outside)) not in li:
            kset.append((i, g.orders[k]))
    assert sorted(kset) == sorted(ab)

    if g.all_orders_finite():
        kind = "finite abelian"
    elif g.is_raag():
        kind = "free abelian"
    else:
        kind = "abelian"
    return TreeDecomposition(
        l0_partition={i: tuple(partition[i]) for i in g.vertices()},
        per_vertex_case=cases,
        ab_factor=tuple(o for (_, o) in sorted(ab)),
        ab_kind=kind,
        link_sets={i: tuple(sorted(link(g, i))) for i in g.vertices()},
    )


def vcd_out(g: LabeledGraph):
    """|leaves| - 2 for a finite-order tree; None off-hypothesis.  The
    equivalent sum over links is recomputed and asserted."""
    if not (is_tree(g) and g.all_orders_finite()):
        return None
    leaves = [v for v in g.vertices() if g.degree(v) == 1]
    value = len(leaves) - 2
    alt = sum(max(0, g.degree(v) - 2) for v in g.vertices())
    assert alt == value
    return value


def aut_w_hyperbolic(g: LabeledGraph):
    """Word-hyperbolicity of the automorphism group for finite orders: no
    SIL and every four-circuit chorded.  None when some order is infinite."""
    if not g.all_orders_finite():
        return None
    return find_sil(g) is None and not has_chordless_four_cycle(g)


@dataclass(frozen=True)
class ExtensionReport:
    basis: str  # "racg" or "conjectural"
    cond_no_center: bool  # star complement nonempty for every vertex
    cond_symmetries_fix_classes: bool | None  # each graph automorphism fixes each Delta_i; None = search bound exceeded
    cond_star_containment: bool  # (3) or its order-aware variant (3')
    verdict: str  # "all extensions split" / "not determined" / "not evaluated"


def extension_splitting_check(g: LabeledGraph, aut_bound: int = 12) -> ExtensionReport:
    """Conditions under which every extension of any group by W splits.

    For all-orders-2 input the three printed conditions are exactly the
    right-angled criterion; for other orders condition (3) is replaced by
    its divisibility variant and the verdict is labeled conjectural.  The
    symmetry condition needs the bounded automorphism search; past the bound
    it is reported as unknown instead of guessed.
    """
    racg = g.is_racg()
    cond1 = all(g.star_mask(i) != g.full_mask for i in g.vertices())
    classes = {i: delta_class(g, i) for i in g.vertices()}
    cond2: bool | None = True
    if g.n > aut_bound:
        cond2 = None
    else:
        for perm in labeled_graph_automorphisms(g, bound=aut_bound):
            for i in g.vertices():
                if frozenset(perm[v] for v in classes[i]) != classes[i]:
                    cond2 = False
                    break
            if not cond2:
                break
    if racg:
        cond3 = all(
            g.star_mask(i) == g.star_mask(j)
            for i in g.vertices()
            for j in g.vertices()
            if i != j and not (g.star_mask(i) & ~g.star_mask(j))
        )
    else:
        def order_ok(i, j):
            mi, mj = g.orders[i], g.orders[j]
            if mi is INF or mi == INF:
                return True
            if mj is INF or mj == INF:
                return False
            return int(mi) % int(mj) == 0

        cond3 = all(
            g.star_mask(i) == g.star_mask(j)
            for i in g.vertices()
            for j in g.vertices()
            if i != j and not (g.star_mask(i) & ~g.star_mask(j)) and order_ok(i, j)
        )
    if cond2 is None and cond1 and cond3:
        verdict = "not evaluated"
    elif cond1 and cond2 and cond3:
        verdict = "all extensions split"
    else:
        verdict = "not determined"
    return ExtensionReport(
        basis="racg" if racg else "conjectural",
        cond_no_center=cond1,
        cond_symmetries_fix_classes=cond2,
        cond_star_containment=cond3,
        verdict=verdict,
    )


@dataclass(frozen=True)
class Remark82Report:
    cond_clique_complements_connected: bool
    cond_four_cycles_chorded: bool
    cond_virtually_abelian_separator: bool
    separator: tuple  # witness for condition 3, () if none
    cond_no_sil: bool

    @property
    def all_hold(self) -> bool:
        return (
            self.cond_clique_complements_connected
            and self.cond_four_cycles_chorded
            and self.cond_virtually_abelian_separator
            and self.cond_no_sil
        )


def _nonempty_cliques(g: LabeledGraph):
    seen = set()
    for c in maximal_cliques(g):
        members = sorted(c)
        for k in range(1, len(members) + 1):
            for sub in itertools.combinations(members, k):
                seen.add(sub)
    return sorted(seen)


def _separating(g: LabeledGraph, vertices) -> bool:
    rest = g.full_mask & ~_mask_of(vertices)
    return len(_components_of_mask(g, rest)) > 1


def remark82_check(g: LabeledGraph) -> Remark82Report:
    """The four graph conditions yielding a one-ended hyperbolic group with
    finite outer automorphism group and a nontrivial JSJ decomposition.

    Condition 3 uses a sufficient syntactic test for the separator to
    generate a virtually abelian group: a clique, or a clique joined to one
    non-adjacent vertex pair (finite-by-infinite-dihedral).  All orders must
    be 2.
    """
    if not g.is_racg():
        raise ValueError("all orders must be 2 for this check")
    cond1 = not any(_separating(g, c) for c in _nonempty_cliques(g))
    cond2 = not has_chordless_four_cycle(g)
    separator = ()
    for c in _nonempty_cliques(g):
        if _separating(g, c):
            separator = tuple(c)
            break
    if not separator:
        for x in g.vertices():
            for y in range(x + 1, g.n + 1):
                if g.adjacent(x, y):
                    continue
                common = g.adj[x] & g.adj[y]
                base = [()]
                for c in _nonempty_cliques(g):
                    if not (_mask_of(c) & ~common):
                        base.append(tuple(c))
                for c in base:
                    cand = tuple(sorted(c + (x, y)))
                    if _separating(g, cand):
                        separator = cand
                        break
                if separator:
                    break
            if separator:
                break
    cond4 = find_sil(g) is None
    return Remark82Report(
        cond_clique_complements_connected=cond1,
        cond_four_cycles_chorded=cond2,
        cond_virtually_abelian_separator=bool(separator),
        separator=separator,
        cond_no_sil=cond4,
    )


def general_partition(g: LabeledGraph):
    """The inductive peeling of the canonical generating set by link points
    on an arbitrary connected graph: part i collects the not-yet-assigned
    generators having i as a link point.  Returns (parts, leftovers); the
    leftovers are the generators without any link point."""
    if not is_connected(g):
        raise ValueError("general partition requires a connected graph")
    remaining = list(pc_zero(g))
    parts = {}
    for i in g.vertices():
        here = [pc for pc in remaining if i in link_points(g, pc)]
        parts[i] = tuple(here)
        remaining = [pc for pc in remaining if pc not in here]
    return parts, tuple(remaining)


@dataclass(frozen=True)
class StructureReport:
    coned: bool
    sil: SilWitness | None
    out0_abelian: bool
    witness_pair: tuple | None
    out_w_finite: bool | None
    aut_w_hyperbolic: bool | None
    vcd: int | None
    extension: ExtensionReport
    tree: TreeDecomposition | None


def structure_report(g: LabeledGraph, aut_bound: int = 12) -> StructureReport:
    """One-stop structural analysis; fields requiring failed hypotheses are
    None rather than guessed."""
    sil = find_sil(g)
    abelian, pair = out0_is_abelian(g)
    assert abelian == (sil is None)
    tree = None
    if is_tree(g) and g.n >= 3:
        tree = tree_decomposition(g)
    return StructureReport(
        coned=not is_connected(g),
        sil=sil,
        out0_abelian=abelian,
        witness_pair=pair,
        out_w_finite=out_w_finite(g),
        aut_w_hyperbolic=aut_w_hyperbolic(g),
        vcd=vcd_out(g),
        extension=extension_splitting_check(g, aut_bound=aut_bound),
        tree=tree,
    )
