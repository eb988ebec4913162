import itertools

import pytest

from graphprod.algebra import cyclic_group, subgroup, symmetric_group
from graphprod.graph import GraphProduct, SimplicialGraph, complete, cycle, edgeless, path
from graphprod.words import Syllable, normal_form

Z2 = cyclic_group(2)
Z3 = cyclic_group(3)
S3 = symmetric_group(3)


def alternating(G):
    """Elements of order dividing 3 in S3, i.e. A3."""
    return subgroup(G, [x for x in G if G.element_order(x) in (1, 3)])


def transposition(G):
    return next(x for x in G if G.element_order(x) == 2)


def syllables(P):
    return [Syllable(v, x) for v in P.vertices for x in P.groups[v]]


def nontrivial_syllables(P):
    return [Syllable(v, x) for v in P.vertices for x in P.groups[v] if x != 0]


def all_words(P, max_len, nontrivial_only=False):
    syl = nontrivial_syllables(P) if nontrivial_only else syllables(P)
    for n in range(max_len + 1):
        yield from itertools.product(syl, repeat=n)


def distinct_normal_forms(P, max_len):
    """All nontrivial elements of normal-form length <= max_len."""
    seen = set()
    for w in all_words(P, max_len, nontrivial_only=True):
        f = normal_form(P, w)
        if f and len(f) <= max_len:
            seen.add(f)
    return sorted(seen, key=lambda w: (len(w), w))


def graph_family(max_vertices=4):
    """Edgeless, path, cycle and complete graphs on 1..max_vertices vertices."""
    out = []
    for n in range(1, max_vertices + 1):
        vs = "abcd"[:n]
        shapes = {"edgeless": edgeless(vs), "path": path(vs), "complete": complete(vs)}
        if n >= 3:
            shapes["cycle"] = cycle(vs)
        seen = set()
        for name, g in shapes.items():
            if g not in seen:
                seen.add(g)
                out.append((f"{name}{n}", g))
    return out


@pytest.fixture
def free_z2():
    return GraphProduct(edgeless(["u", "v"]), {"u": Z2, "v": Z2})


@pytest.fixture
def edge_plus_isolated():
    g = SimplicialGraph(["u", "v", "w"], [("u", "v")])
    return GraphProduct(g, {"u": Z2, "v": Z3, "w": Z2})


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
