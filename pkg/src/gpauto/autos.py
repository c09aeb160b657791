"""The automorphism layer: partial conjugations and the generating sets built
from them, conjugating automorphisms as conjugator-per-vertex data, the
restriction/retraction calculus, inner-witness search by coset intersection,
and the retraction of clique-preserving automorphisms onto the clique-mapping
subgroup.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import (
    INF,
    LabeledGraph,
    _bits,
    _mask_of,
    components_minus_star,
    induced_subgraph,
    is_clique_mask,
    labeled_graph_automorphisms,
    link,
    maximal_cliques,
)
from .words import (
    IDENTITY,
    Word,
    conjugate,
    invert,
    multiply,
    normal_form,
    support_mask,
    word,
)


class NotAutStarError(ValueError):
    """The candidate map does not send every maximal complete subgroup into a
    conjugate of a maximal complete subgroup."""


class RewriteHypothesisError(ValueError):
    """Restricted-alphabet rewriting was invoked for an automorphism whose
    conjugators cannot all be chosen inside the target subgraph."""


@dataclass(frozen=True, order=True)
class PartialConjugation:
    """chi_{iK}: conjugate the component K of the star complement of i by the
    generator i, fix everything else."""

    operator: int
    domain_key: tuple  # sorted tuple, kept orderable for canonical listings

    @property
    def domain(self) -> frozenset:
        return frozenset(self.domain_key)

    def __str__(self):
        return f"x{self.operator}:{','.join(str(v) for v in self.domain_key)}"


def partial_conjugation(g: LabeledGraph, operator: int, domain) -> PartialConjugation:
    """Validated constructor: domain must be one full component of the star
    complement of the operator."""
    dom = frozenset(domain)
    if dom not in components_minus_star(g, operator):
        raise ValueError(
            f"{sorted(dom)} is not a component of the star complement of {operator}"
        )
    return PartialConjugation(operator=operator, domain_key=tuple(sorted(dom)))


def all_partial_conjugations(g: LabeledGraph) -> list[PartialConjugation]:
    """The full generating set, ordered by operator then least domain element."""
    out = []
    for i in g.vertices():
        for comp in components_minus_star(g, i):
            out.append(PartialConjugation(i, tuple(sorted(comp))))
    return out


def pc_zero(g: LabeledGraph) -> list[PartialConjugation]:
    """Drop, per operator, the one generator whose domain contains the
    minimal vertex outside the operator's star."""
    out = []
    for pc in all_partial_conjugations(g):
        outside = g.full_mask & ~g.star_mask(pc.operator)
        minimal = next(_bits(outside))
        if minimal not in pc.domain_key:
            out.append(pc)
    return out


def link_points(g: LabeledGraph, pc: PartialConjugation) -> frozenset:
    """Vertices i with the operator in link(i) and the domain meeting link(i)."""
    dmask = _mask_of(pc.domain_key)
    return frozenset(
        i
        for i in g.vertices()
        if (g.adj[i] >> pc.operator) & 1 and (g.adj[i] & dmask)
    )


def l_set(g: LabeledGraph, i: int) -> list[PartialConjugation]:
    g.check_vertex(i)
    return [pc for pc in all_partial_conjugations(g) if i in link_points(g, pc)]


class AutZero:
    """An automorphism sending each vertex to a conjugate of itself, stored
    as one conjugator word per vertex (vertex j maps to w_j v_j w_j^-1).

    Conjugators are kept in normal form; equality of two such automorphisms
    reduces to comparing the normal forms of the images.
    """

    __slots__ = ("g", "conjugators", "_images")

    def __init__(self, g: LabeledGraph, conjugators):
        conjugators = tuple(conjugators)
        assert len(conjugators) == g.n + 1
        self.g = g
        self.conjugators = conjugators
        self._images = [None] * (g.n + 1)

    def image(self, j: int) -> Word:
        cached = self._images[j]
        if cached is None:
            w = self.conjugators[j]
            cached = conjugate(self.g, w, ((j, 1),))
            self._images[j] = cached
        return cached

    def image_of_power(self, j: int, e: int) -> Word:
        w = self.conjugators[j]
        return multiply(self.g, w, ((j, e),), invert(self.g, w))

    def apply(self, w) -> Word:
        out = []
        for (v, e) in word(self.g, w):
            out.extend(self.image_of_power(v, e))
        return normal_form(self.g, out)

    def compose(self, other: "AutZero") -> "AutZero":
        """self after other (function composition: other acts first)."""
        conj = [IDENTITY]
        for j in self.g.vertices():
            conj.append(
                multiply(self.g, self.apply(other.conjugators[j]), self.conjugators[j])
            )
        return AutZero(self.g, conj)

    def is_identity(self) -> bool:
        return all(self.image(j) == ((j, 1),) for j in self.g.vertices())

    def __repr__(self):
        return f"AutZero({self.conjugators[1:]})"


def identity_aut(g: LabeledGraph) -> AutZero:
    return AutZero(g, (IDENTITY,) * (g.n + 1))


def inner_aut(g: LabeledGraph, w) -> AutZero:
    nf = normal_form(g, w)
    return AutZero(g, (IDENTITY,) + (nf,) * g.n)


def evaluate(g: LabeledGraph, letters) -> AutZero:
    """Compose a word in partial-conjugation letters, read left to right as a
    product (the rightmost letter acts first)."""
    conj = [IDENTITY] * (g.n + 1)
    for (pc, exp) in letters:
        if exp not in (1, -1):
            raise ValueError(f"letter exponent must be +-1, got {exp!r}")
        i = pc.operator
        mult = multiply(g, conj[i], ((i, exp),), invert(g, conj[i]))
        for j in pc.domain_key:
            conj[j] = multiply(g, mult, conj[j])
    return AutZero(g, conj)


def aut_equal(g: LabeledGraph, a: AutZero, b: AutZero) -> bool:
    return all(a.image(j) == b.image(j) for j in g.vertices())


def omega_retraction(g: LabeledGraph, phi: AutZero, omega) -> AutZero:
    """Replace every conjugator by its projection to the subgraph; yields the
    retraction onto the subgroup generated by the omega-operator letters."""
    from .words import project

    conj = [IDENTITY]
    for j in g.vertices():
        conj.append(project(g, phi.conjugators[j], omega))
    return AutZero(g, conj)


def restricted_rewrite(g: LabeledGraph, letters, omega) -> list:
    """Keep exactly the letters whose operator lies in omega.

    Valid when the full word's automorphism admits conjugators inside the
    omega subgroup; that hypothesis is checked (it is equivalent to the
    omega-retraction fixing the automorphism), and the omitted-letter word is
    verified to spell the same automorphism.
    """
    omask = _mask_of(g.check_vertex(v) for v in omega)
    kept = [(pc, e) for (pc, e) in letters if (omask >> pc.operator) & 1]
    phi = evaluate(g, letters)
    if not aut_equal(g, omega_retraction(g, phi, omega), phi):
        raise RewriteHypothesisError(
            "automorphism has no conjugators supported in the given subgraph"
        )
    assert aut_equal(g, evaluate(g, kept), phi)
    return kept


def restrict_to_link(g: LabeledGraph, letters, i: int):
    """Restrict a word of partial conjugations, all with link point i, to the
    graph product on link(i).  Returns (subgraph, old_of_new, automorphism)."""
    li = link(g, i)
    for (pc, _) in letters:
        if i not in link_points(g, pc):
            raise ValueError(f"{pc} does not have {i} as a link point")
    sub, old_of_new = induced_subgraph(g, li)
    new_of_old = {o: k for k, o in enumerate(old_of_new) if k}
    conj = [IDENTITY] * (sub.n + 1)
    for (pc, exp) in letters:
        o = new_of_old[pc.operator]
        dom = [new_of_old[v] for v in pc.domain_key if v in new_of_old]
        mult = multiply(sub, conj[o], ((o, exp),), invert(sub, conj[o]))
        for t in dom:
            conj[t] = multiply(sub, mult, conj[t])
    return sub, old_of_new, AutZero(sub, conj)


def _strip_double_coset(g: LabeledGraph, w, left_mask: int, right_mask: int):
    """Greedy factorization w = beta . residue . alpha with the vertices of
    beta in left_mask and of alpha in right_mask.  The word lies in
    W(left).W(right) iff the residue comes out empty: stripping never changes
    membership, and a stuck nonempty residue cannot be factored."""
    syls = list(normal_form(g, w))
    beta: list = []
    alpha: list = []
    changed = True
    while changed:
        changed = False
        seen = 0
        for idx, (v, e) in enumerate(syls):
            if not (seen & ~g.adj[v]) and (left_mask >> v) & 1:
                beta.append((v, e))
                del syls[idx]
                changed = True
                break
            seen |= 1 << v
        if changed:
            continue
        seen = 0
        for idx in range(len(syls) - 1, -1, -1):
            v, e = syls[idx]
            if not (seen & ~g.adj[v]) and (right_mask >> v) & 1:
                alpha.insert(0, (v, e))
                del syls[idx]
                changed = True
                break
            seen |= 1 << v
    return tuple(beta), tuple(alpha), tuple(syls)


def coset_intersection(g: LabeledGraph, rep_a, mask_a: int, rep_b, mask_b: int):
    """Intersect the cosets rep_a.W(A) and rep_b.W(B) of special subgroups.

    Nonempty iff rep_b^-1 rep_a factors across W(B).W(A); the intersection is
    then a coset of W(A & B).  Returns (representative, mask) or None.
    """
    c = multiply(g, invert(g, rep_b), rep_a)
    beta, _, residue = _strip_double_coset(g, c, mask_b, mask_a)
    if residue:
        return None
    return normal_form(g, tuple(rep_b) + beta), mask_a & mask_b


def _shrink_coset_rep(g: LabeledGraph, rep, mask: int) -> Word:
    """Deterministic short representative: drop back-shufflable syllables
    whose vertex lies in the subgroup."""
    _, _, residue = _strip_double_coset(g, rep, 0, mask)
    return normal_form(g, residue)


def find_inner_witness(g: LabeledGraph, phi: AutZero):
    """A word w with phi = conjugation by w, if one exists.

    The valid conjugators for vertex j form the coset w_j . W(star j), the
    centralizer of a vertex being the special subgroup on its star; the
    witness set is the intersection of these cosets, folded one vertex at a
    time.  The returned witness is verified before being handed back.
    """
    rep: Word = phi.conjugators[1]
    mask = g.star_mask(1)
    for j in range(2, g.n + 1):
        hit = coset_intersection(g, rep, mask, phi.conjugators[j], g.star_mask(j))
        if hit is None:
            return None
        rep, mask = hit
    witness = _shrink_coset_rep(g, rep, mask)
    for j in g.vertices():
        if conjugate(g, witness, ((j, 1),)) != phi.image(j):
            return None
    return witness


# --- generator-image maps and the retraction onto clique-mapping automorphisms


GeneratorImageMap = dict  # vertex -> Word


def identity_map(g: LabeledGraph) -> GeneratorImageMap:
    return {v: ((v, 1),) for v in g.vertices()}


def apply_map(g: LabeledGraph, gamma: GeneratorImageMap, w) -> Word:
    out = []
    for (v, e) in word(g, w):
        img = gamma[v]
        if e != 1:
            img = tuple(img) * abs(e) if e > 0 else tuple(invert(g, img)) * (-e)
        out.extend(img)
    return normal_form(g, out)


def compose_maps(g: LabeledGraph, outer, inner) -> GeneratorImageMap:
    """outer after inner, as endomorphisms by generator images."""
    return {v: apply_map(g, outer, inner[v]) for v in g.vertices()}


def map_equal(g: LabeledGraph, a, b) -> bool:
    return all(normal_form(g, a[v]) == normal_form(g, b[v]) for v in g.vertices())


def autzero_to_map(g: LabeledGraph, phi: AutZero) -> GeneratorImageMap:
    return {v: phi.image(v) for v in g.vertices()}


def pc_to_map(g: LabeledGraph, pc: PartialConjugation, exp: int = 1) -> GeneratorImageMap:
    return autzero_to_map(g, evaluate(g, [(pc, exp)]))


def symmetry_map(g: LabeledGraph, perm) -> GeneratorImageMap:
    return {v: ((perm[v], 1),) for v in g.vertices()}


def transvection_map(g: LabeledGraph, i: int, j: int) -> GeneratorImageMap:
    gamma = identity_map(g)
    gamma[i] = normal_form(g, ((i, 1), (j, 1)))
    return gamma


def _element_centralizer_mask(g: LabeledGraph, w) -> int:
    """Centralizer of a cyclically reduced clique-supported element: the
    special subgroup on the intersection of the supports' stars (the whole
    group for the identity)."""
    smask = support_mask(g, w)
    if not smask:
        return g.full_mask
    out = g.full_mask
    for v in _bits(smask):
        out &= g.star_mask(v)
    return out


def tits_retraction(g: LabeledGraph, gamma: GeneratorImageMap) -> GeneratorImageMap:
    """Send each generator image to the unique minimal-length element of its
    conjugacy class.  Defined for maps carrying every maximal complete
    subgroup into a conjugate of one; that hypothesis is verified per clique
    by intersecting the cosets of admissible conjugators.
    """
    from .words import cyclically_reduce

    cores: GeneratorImageMap = {}
    conjs = {}
    for v in g.vertices():
        cr = cyclically_reduce(g, gamma[v])
        if not is_clique_mask(g, support_mask(g, cr.core)):
            raise NotAutStarError(
                f"image of {v} is not conjugate into a complete subgroup"
            )
        cores[v] = cr.core
        conjs[v] = cr.conjugator
    mcs_masks = [_mask_of(c) for c in maximal_cliques(g)]
    for clique in maximal_cliques(g):
        members = sorted(clique)
        union_supp = 0
        for v in members:
            union_supp |= support_mask(g, cores[v])
        if not any(not (union_supp & ~m) for m in mcs_masks):
            raise NotAutStarError(
                f"images of clique {members} do not land in one maximal clique"
            )
        rep: Word = IDENTITY
        mask = g.full_mask
        for v in members:
            hit = coset_intersection(
                g, rep, mask, conjs[v], _element_centralizer_mask(g, cores[v])
            )
            if hit is None:
                raise NotAutStarError(
                    f"generators of clique {members} admit no shared conjugator"
                )
            rep, mask = hit
    return cores


@dataclass(frozen=True)
class Aut1Generators:
    symmetries: tuple  # vertex permutations
    transvections: tuple  # (i, j) meaning v_i -> v_i v_j
    completeness: str  # "complete (RACG)" or "candidate (general)"


def transvection_admissible(g: LabeledGraph, i: int, j: int) -> bool:
    """v_i -> v_i v_j preserves the relations iff star(i) is inside star(j)
    and the order of j divides that of i (or i has infinite order)."""
    if i == j or (g.star_mask(i) & ~g.star_mask(j)):
        return False
    mi, mj = g.orders[i], g.orders[j]
    if mi is INF or mi == INF:
        return True
    if mj is INF or mj == INF:
        return False
    return int(mi) % int(mj) == 0


def aut1_generators(g: LabeledGraph, bound: int = 12) -> Aut1Generators:
    """Graph symmetries plus admissible dominated transvections.  A complete
    generating set when all orders are 2; otherwise a candidate list pending
    the general divisibility conjecture."""
    perms = labeled_graph_automorphisms(g, bound=bound)
    trans = tuple(
        (i, j)
        for i in g.vertices()
        for j in g.vertices()
        if transvection_admissible(g, i, j)
    )
    label = "complete (RACG)" if g.is_racg() else "candidate (general)"
    return Aut1Generators(symmetries=tuple(perms), transvections=trans, completeness=label)


# --- text syntax for partial-conjugation words


def parse_autword(g: LabeledGraph, text: str) -> list:
    """Parse letters `x<i>:<k1,k2,...>` with an optional `'` suffix for the
    inverse, whitespace-separated.  Domains are validated against the actual
    star-complement components."""
    letters = []
    for tok in text.split():
        body = tok
        exp = 1
        if body.endswith("'"):
            exp = -1
            body = body[:-1]
        if not body.startswith("x") or ":" not in body:
            raise ValueError(f"bad letter token {tok!r}")
        itxt, _, dtxt = body[1:].partition(":")
        try:
            i = int(itxt)
            dom = [int(p) for p in dtxt.split(",") if p]
        except ValueError:
            raise ValueError(f"bad letter token {tok!r}") from None
        if not dom:
            raise ValueError(f"empty domain in token {tok!r}")
        letters.append((partial_conjugation(g, i, dom), exp))
    return letters


def format_letter(pc: PartialConjugation, exp: int = 1) -> str:
    return str(pc) + ("'" if exp == -1 else "")


def format_autword(letters) -> str:
    return " ".join(format_letter(pc, e) for (pc, e) in letters)
