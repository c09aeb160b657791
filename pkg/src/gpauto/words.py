"""Canonical forms and algebra for elements of a graph product of
directly-indecomposable cyclic groups.

A word is a tuple of syllables (vertex, exponent).  Reduction repeatedly
merges equal-vertex syllables separated only by syllables adjacent to that
vertex (the deletion condition detects exactly the non-reduced words), with
exponents taken in the canonical range 1..m-1 for finite vertex order m.
Among the shuffle-equivalent reduced words the canonical representative is
the greedy leftmost-least one: at each position the smallest vertex whose
syllable can be shuffled there is placed next.  Two canonical words are
structurally equal iff they spell the same group element.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import INF, LabeledGraph, _mask_of, is_clique

Syllable = tuple  # (vertex, exponent)
Word = tuple  # tuple of syllables

IDENTITY: Word = ()


def canon_exponent(g: LabeledGraph, v: int, e: int) -> int:
    """Exponent reduced into the canonical range; 0 means the syllable dies."""
    m = g.orders[v]
    if m is INF or m == INF:
        return e
    return e % int(m)


def word(g: LabeledGraph, pairs) -> Word:
    """Build a word from (vertex, exponent) pairs: validates indices, merges
    consecutive equal-vertex syllables, drops dead ones.  Does not reduce."""
    out = []
    for v, e in pairs:
        g.check_vertex(v)
        if not isinstance(e, int) or e == 0:
            if e == 0:
                continue
            raise ValueError(f"exponent {e!r} must be a nonzero integer")
        if out and out[-1][0] == v:
            e = out.pop()[1] + e
        e = canon_exponent(g, v, e)
        if e:
            out.append((v, e))
    return tuple(out)


def _reduce(g: LabeledGraph, syls: list) -> list:
    """Deletion-condition fixpoint: merge equal-vertex syllables whenever all
    syllables between them commute with that vertex."""
    changed = True
    while changed:
        changed = False
        k = len(syls)
        for p in range(k):
            vp, ep = syls[p]
            adj = g.adj[vp]
            for q in range(p + 1, k):
                vq, eq = syls[q]
                if vq == vp:
                    e = canon_exponent(g, vp, ep + eq)
                    merged = [(vp, e)] if e else []
                    syls = syls[:p] + syls[p + 1 : q] + merged + syls[q + 1 :]
                    changed = True
                    break
                if not (adj >> vq) & 1:
                    break
            if changed:
                break
    return syls


def _leftmost_least(g: LabeledGraph, syls: list) -> list:
    """Canonical linearization of a reduced word under commutation shuffles."""
    out = []
    rem = syls
    while rem:
        seen = 0
        best = None
        best_v = None
        for idx, (v, e) in enumerate(rem):
            if not (seen & ~g.adj[v]) and (best_v is None or v < best_v):
                best, best_v = idx, v
            seen |= 1 << v
        out.append(rem[best])
        rem = rem[:best] + rem[best + 1 :]
    return out


def normal_form(g: LabeledGraph, w) -> Word:
    return tuple(_leftmost_least(g, _reduce(g, list(word(g, w)))))


def multiply(g: LabeledGraph, *ws) -> Word:
    prod = []
    for w in ws:
        prod.extend(w)
    return normal_form(g, prod)


def invert(g: LabeledGraph, w) -> Word:
    return normal_form(g, [(v, -e) for (v, e) in reversed(tuple(w))])


def power(g: LabeledGraph, w, k: int) -> Word:
    if k < 0:
        return power(g, invert(g, w), -k)
    out: Word = IDENTITY
    for _ in range(k):
        out = multiply(g, out, w)
    return out


def conjugate(g: LabeledGraph, c, w) -> Word:
    """normal_form(c w c^-1)."""
    return multiply(g, c, tuple(w), invert(g, c))


def syllable_length(g: LabeledGraph, w) -> int:
    return len(normal_form(g, w))


def support(g: LabeledGraph, w) -> frozenset:
    """Vertex set of the normal form; independent of the chosen spelling."""
    return frozenset(v for (v, _) in normal_form(g, w))


def support_mask(g: LabeledGraph, w) -> int:
    return _mask_of(v for (v, _) in normal_form(g, w))


def project(g: LabeledGraph, w, omega) -> Word:
    """Retraction onto the special subgroup on omega: delete the syllables
    whose vertex lies outside, then normalize.  A homomorphism."""
    omask = _mask_of(g.check_vertex(v) for v in omega)
    return normal_form(g, [(v, e) for (v, e) in word(g, w) if (omask >> v) & 1])


def in_special_subgroup(g: LabeledGraph, w, delta) -> bool:
    dmask = _mask_of(g.check_vertex(v) for v in delta)
    return not (support_mask(g, w) & ~dmask)


def centralizes_vertex(g: LabeledGraph, w, j: int) -> bool:
    """True iff w commutes with generator j; the centralizer of a vertex is
    the special subgroup on its star, so this is a support test."""
    return not (support_mask(g, w) & ~g.star_mask(j))


def centralizes_vertex_by_commutation(g: LabeledGraph, w, j: int) -> bool:
    """Same predicate computed by actually comparing the two products; kept
    for differential testing against centralizes_vertex."""
    vj = ((g.check_vertex(j), 1),)
    return multiply(g, w, vj) == multiply(g, vj, tuple(w))


@dataclass(frozen=True)
class CyclicReduction:
    core: Word
    conjugator: Word


def _front_shufflable(g: LabeledGraph, syls, idx: int) -> bool:
    seen = 0
    for (v, _) in syls[:idx]:
        seen |= 1 << v
    return not (seen & ~g.adj[syls[idx][0]])


def _find_cyclic_move(g: LabeledGraph, syls):
    k = len(syls)
    seen_front = 0
    for p in range(k):
        vp = syls[p][0]
        if seen_front & ~g.adj[vp]:
            seen_front |= 1 << vp
            continue
        seen_back = 0
        for q in range(k - 1, p, -1):
            vq = syls[q][0]
            if vq == vp and not (seen_back & ~g.adj[vp]):
                return p
            seen_back |= 1 << vq
        seen_front |= 1 << vp
    return None


def _peel(g: LabeledGraph, core: list, conj: list) -> list:
    """Conjugate away syllables while some vertex has one syllable shufflable
    to the front and a second one shufflable to the back; each peel merges the
    pair, so the syllable count strictly decreases."""
    while True:
        p = _find_cyclic_move(g, core)
        if p is None:
            return core
        v, e = core[p]
        conj.append((v, e))
        core = _leftmost_least(g, _reduce(g, core[:p] + core[p + 1 :] + [(v, e)]))


def cyclically_reduce(g: LabeledGraph, w) -> CyclicReduction:
    """Minimal-length conjugacy representative plus a conjugator realizing it.

    Peeling alone leaves the core determined only up to cyclic permutation
    and shuffles, so the rotation orbit of the peeled word is explored and
    its lexicographically least normal form returned; this makes the core a
    conjugacy invariant.  Maintains w = conjugator . core . conjugator^-1.
    For elements conjugate into a clique subgroup the orbit is a single
    word, the unique shortest element of the class.
    """
    conj: list = []
    core = _peel(g, list(normal_form(g, w)), conj)
    best = tuple(core)
    best_conj = list(conj)
    seen = {best}
    stack = [(best, list(conj))]
    while stack:
        cur, cconj = stack.pop()
        seen_front = 0
        for p, (v, e) in enumerate(cur):
            if not (seen_front & ~g.adj[v]):
                rot_conj = cconj + [(v, e)]
                rot = _peel(
                    g,
                    _leftmost_least(g, _reduce(g, list(cur[:p] + cur[p + 1 :]) + [(v, e)])),
                    rot_conj,
                )
                rot = tuple(rot)
                if len(rot) < len(best):  # a rotation exposed a further peel
                    best, best_conj, seen, stack = rot, rot_conj, {rot}, [(rot, rot_conj)]
                    break
                if rot not in seen:
                    seen.add(rot)
                    stack.append((rot, rot_conj))
                    if rot < best:
                        best, best_conj = rot, rot_conj
            seen_front |= 1 << v
    return CyclicReduction(core=best, conjugator=normal_form(g, best_conj))


def center_vertices(g: LabeledGraph) -> frozenset:
    """The center of the group is the special subgroup on these vertices."""
    return frozenset(v for v in g.vertices() if g.star_mask(v) == g.full_mask)


def is_finite_special(g: LabeledGraph, delta) -> bool:
    """A special subgroup is finite iff its vertices span a clique and all
    have finite order."""
    verts = [g.check_vertex(v) for v in delta]
    return is_clique(g, verts) and all(
        g.orders[v] is not INF and g.orders[v] != INF for v in verts
    )


def parse_word(text: str):
    """Parse the CLI word syntax: whitespace-separated `v<i>` or `v<i>^<e>`
    tokens; the empty string is the identity."""
    pairs = []
    for tok in text.split():
        body = tok
        if not body.startswith("v"):
            raise ValueError(f"bad word token {tok!r}")
        body = body[1:]
        if "^" in body:
            vtxt, _, etxt = body.partition("^")
        else:
            vtxt, etxt = body, "1"
        try:
            v, e = int(vtxt), int(etxt)
        except ValueError:
            raise ValueError(f"bad word token {tok!r}") from None
        if e == 0:
            raise ValueError(f"zero exponent in token {tok!r}")
        pairs.append((v, e))
    return pairs


def format_word(w) -> str:
    return " ".join(f"v{v}" if e == 1 else f"v{v}^{e}" for (v, e) in w)
