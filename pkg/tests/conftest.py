from pathlib import Path

import pytest

from gpauto.graphs import INF, LabeledGraph
from gpauto.words import word

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

T16_EDGES = [
    (1, 2), (2, 3), (2, 4), (2, 5), (3, 6), (3, 7), (4, 8),
    (5, 9), (5, 10), (5, 11), (6, 12), (7, 13), (7, 14), (8, 15), (8, 16),
]


@pytest.fixture
def t16():
    # same tree as fixtures/t16.graph, orders all 2 unless a test says otherwise
    return LabeledGraph(16, T16_EDGES, [2] * 16)


@pytest.fixture
def p3():
    return LabeledGraph(3, [(1, 2), (2, 3)], [2, 2, 2])


@pytest.fixture
def star3():
    return LabeledGraph(4, [(1, 4), (2, 4), (3, 4)], [2, 2, 2, 2])


@pytest.fixture
def sq4():
    return LabeledGraph(4, [(1, 2), (2, 3), (3, 4), (1, 4)], [2, 2, 2, 2])


@pytest.fixture
def k3():
    return LabeledGraph(3, [(1, 2), (1, 3), (2, 3)], [2, 2, 2])


def random_graph(rng, n_lo=2, n_hi=5, orders=(2, 3, 4), p=0.5):
    n = rng.randint(n_lo, n_hi)
    edges = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1) if rng.random() < p]
    return LabeledGraph(n, edges, [rng.choice(orders) for _ in range(n)])


def random_word(rng, g, max_syllables=4, exps=(-2, -1, 1, 2)):
    return [(rng.randint(1, g.n), rng.choice(exps)) for _ in range(rng.randint(0, max_syllables))]


# --- independent rewriting-closure oracle for word equality ----------------
#
# Closure of a word under: swapping adjacent commuting syllables and merging
# adjacent equal-vertex syllables (exponents mod the vertex order).  Merges
# only shrink, so the closure is finite; all reduced spellings of the element
# appear in it and the least one is a canonical key.  Completely independent
# of the normal-form implementation.


def rewriting_closure(g, w):
    start = word(g, w)
    seen = {start}
    stack = [start]
    while stack:
        cur = stack.pop()
        for p in range(len(cur) - 1):
            (v1, e1), (v2, e2) = cur[p], cur[p + 1]
            nxt = None
            if v1 != v2 and g.adjacent(v1, v2):
                nxt = cur[:p] + ((v2, e2), (v1, e1)) + cur[p + 2:]
            elif v1 == v2:
                m = g.orders[v1]
                e = (e1 + e2) % int(m) if m is not INF and m != INF else e1 + e2
                nxt = cur[:p] + (((v1, e),) if e else ()) + cur[p + 2:]
            if nxt is not None and nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return seen


def oracle_key(g, w):
    cl = rewriting_closure(g, w)
    shortest = min(len(x) for x in cl)
    return min(x for x in cl if len(x) == shortest)
