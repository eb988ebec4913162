import pytest

from graphprod.errors import InvalidGraph, UnknownVertex
from graphprod.graph import SimplicialGraph, complete, cycle, edgeless, full_subgraph, link, path

from conftest import graph_family


def test_link_examples():
    assert link(edgeless(["u", "v"]), "u") == frozenset()
    assert link(path(["u", "v", "w"]), "v") == {"u", "w"}
    tri = complete(["a", "b", "c"])
    assert all(link(tri, v) == set("abc") - {v} for v in "abc")


def test_link_unknown_vertex():
    with pytest.raises(UnknownVertex):
        link(path(["u", "v"]), "x")


def test_full_subgraph_examples():
    g = cycle("abcd")
    assert full_subgraph(g, []).vertices == ()
    assert full_subgraph(g, "abcd") == g
    sub = full_subgraph(g, ["a", "b"])
    assert sub.edge_list() == [["a", "b"]]
    with pytest.raises(UnknownVertex):
        full_subgraph(g, ["z"])


def test_invalid_graphs():
    with pytest.raises(InvalidGraph):
        SimplicialGraph(["u"], [("u", "u")])
    with pytest.raises(InvalidGraph):
        SimplicialGraph(["u", "u"])
    with pytest.raises(UnknownVertex):
        SimplicialGraph(["u"], [("u", "v")])
    with pytest.raises(InvalidGraph):
        cycle(["u", "v"])


def test_repeated_edges_collapse():
    g = SimplicialGraph(["u", "v"], [("u", "v"), ("v", "u")])
    assert len(g.edges) == 1


@pytest.mark.parametrize("name,g", graph_family())
def test_link_symmetry_and_nested_subgraphs(name, g):
    for u in g.vertices:
        assert u not in link(g, u)
        for v in g.vertices:
            assert (u in link(g, v)) == (v in link(g, u))
    X = g.vertices[: max(1, len(g.vertices) - 1)]
    Y = X[:1]
    assert full_subgraph(full_subgraph(g, X), Y) == full_subgraph(g, Y)


def test_dict_round_trip():
    g = cycle("abcd")
    assert SimplicialGraph.from_dict(g.to_dict()) == g
