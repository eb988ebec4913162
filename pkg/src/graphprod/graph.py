"""Simplicial graphs and graph-product presentations."""
from __future__ import annotations

from typing import Iterable

from .errors import InvalidGraph, UnknownVertex


class SimplicialGraph:
    """Vertices in a fixed order (used for tie-breaking) and undirected edges
    without loops."""

    def __init__(self, vertices: Iterable, edges: Iterable = ()):
        self.vertices = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise InvalidGraph("repeated vertex")
        vs = set(self.vertices)
        es = set()
        for e in edges:
            u, v = tuple(e)
            if u == v:
                raise InvalidGraph(f"loop at {u!r}")
            if u not in vs or v not in vs:
                raise UnknownVertex(u if u not in vs else v)
            es.add(frozenset((u, v)))
        self.edges = frozenset(es)
        self.position = {v: i for i, v in enumerate(self.vertices)}
        self._links = {v: set() for v in self.vertices}
        for e in self.edges:
            u, v = tuple(e)
            self._links[u].add(v)
            self._links[v].add(u)
        self._links = {v: frozenset(s) for v, s in self._links.items()}

    def __eq__(self, other):
        return (isinstance(other, SimplicialGraph) and self.vertices == other.vertices
                and self.edges == other.edges)

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __repr__(self):
        return f"SimplicialGraph({list(self.vertices)!r}, {self.edge_list()!r})"

    def __contains__(self, v):
        return v in self.position

    def check(self, v):
        if v not in self.position:
            raise UnknownVertex(v)

    def adjacent(self, u, v) -> bool:
        return v in self._links.get(u, ())

    def edge_list(self) -> list:
        """Edges as pairs ordered by vertex position, sorted."""
        pos = self.position
        return sorted((sorted(e, key=pos.__getitem__) for e in self.edges),
                      key=lambda p: (pos[p[0]], pos[p[1]]))

    def to_dict(self) -> dict:
        return {"vertices": list(self.vertices), "edges": [list(e) for e in self.edge_list()]}

    @classmethod
    def from_dict(cls, d) -> "SimplicialGraph":
        return cls(d["vertices"], [tuple(e) for e in d.get("edges", [])])


def link(graph: SimplicialGraph, v) -> frozenset:
    graph.check(v)
    return graph._links[v]


def full_subgraph(graph: SimplicialGraph, X: Iterable) -> SimplicialGraph:
    X = set(X)
    for v in X:
        graph.check(v)
    return SimplicialGraph([v for v in graph.vertices if v in X],
                           [e for e in graph.edges if e <= X])


# common shapes

def edgeless(vertices) -> SimplicialGraph:
    return SimplicialGraph(vertices)


def path(vertices) -> SimplicialGraph:
    vs = list(vertices)
    return SimplicialGraph(vs, zip(vs, vs[1:]))


def cycle(vertices) -> SimplicialGraph:
    vs = list(vertices)
    if len(vs) < 3:
        raise InvalidGraph("a simplicial cycle needs at least 3 vertices")
    return SimplicialGraph(vs, list(zip(vs, vs[1:])) + [(vs[-1], vs[0])])


def complete(vertices) -> SimplicialGraph:
    vs = list(vertices)
    return SimplicialGraph(vs, [(u, v) for i, u in enumerate(vs) for v in vs[i + 1:]])


class GraphProduct:
    """A graph together with one vertex group per vertex.

    Vertex groups only need ``mul``, ``inv``, ``is_identity``, ``contains``
    and an ``identity`` attribute, so both :class:`FiniteGroup` and the
    partial charts of :mod:`graphprod.lec` fit.
    """

    def __init__(self, graph: SimplicialGraph, groups: dict):
        if set(groups) != set(graph.vertices):
            raise InvalidGraph("vertex groups must be given for exactly the graph's vertices")
        self.graph = graph
        self.groups = {v: groups[v] for v in graph.vertices}

    def __eq__(self, other):
        return (isinstance(other, GraphProduct) and self.graph == other.graph
                and self.groups == other.groups)

    def __hash__(self):
        return hash(self.graph)

    def __repr__(self):
        gs = ", ".join(f"{v}: {getattr(g, 'name', '') or g!r}" for v, g in self.groups.items())
        return f"GraphProduct({self.graph!r}, {{{gs}}})"

    @property
    def vertices(self):
        return self.graph.vertices

    def link(self, v) -> frozenset:
        return link(self.graph, v)

    def restrict(self, X) -> "GraphProduct":
        """The presentation of the full subgroup over ``X``."""
        sub = full_subgraph(self.graph, X)
        return GraphProduct(sub, {v: self.groups[v] for v in sub.vertices})
