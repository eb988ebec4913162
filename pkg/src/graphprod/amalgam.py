"""Full-subgroup retractions and the special-amalgam view of graph products.

At a vertex ``v`` a graph product splits as ``G_A *_{G_B} G_C`` with
``A = V - {v}``, ``B = link(v)`` and ``C = {v}``. An element then has a
reduced amalgam form ``a0 c1 a1 ... cn an``; the middle ``a_i`` avoid
``G_B`` and the ``c_j`` are nontrivial.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .algebra import FiniteGroup, Homomorphism, Subgroup, generated
from .errors import UndefinedImage, UnknownVertex
from .graph import GraphProduct
from .words import normal_form, reduce_word


def retract(P: GraphProduct, X: Iterable, word) -> tuple:
    """Normal form of the image of ``word`` under the retraction onto ``G_X``."""
    X = frozenset(X)
    for v in X:
        P.graph.check(v)
    return normal_form(P, tuple(s for s in word if s.vertex in X))


@dataclass(frozen=True)
class SpecialAmalgamSplit:
    v: object
    A: frozenset
    B: frozenset
    C: frozenset

    def to_dict(self, P: GraphProduct) -> dict:
        order = P.graph.vertices
        return {"v": self.v, "A": [u for u in order if u in self.A],
                "B": [u for u in order if u in self.B], "C": [self.v]}


def amalgam_split(P: GraphProduct, v) -> SpecialAmalgamSplit:
    if v not in P.graph:
        raise UnknownVertex(v)
    return SpecialAmalgamSplit(v, frozenset(P.vertices) - {v}, P.link(v), frozenset([v]))


@dataclass(frozen=True)
class AmalgamForm:
    a_parts: tuple  # n + 1 words over G_A
    c_parts: tuple  # n syllables on the splitting vertex

    @property
    def n(self) -> int:
        return len(self.c_parts)

    def interleave(self) -> tuple:
        out = tuple(self.a_parts[0])
        for c, a in zip(self.c_parts, self.a_parts[1:]):
            out += (c,) + tuple(a)
        return out


def segments(word, v) -> AmalgamForm:
    """Cut a word at its ``v``-syllables, without canonicalizing anything."""
    a_parts, c_parts, cur = [], [], []
    for s in word:
        if s.vertex == v:
            a_parts.append(tuple(cur))
            c_parts.append(s)
            cur = []
        else:
            cur.append(s)
    a_parts.append(tuple(cur))
    return AmalgamForm(tuple(a_parts), tuple(c_parts))


def amalgam_form(P: GraphProduct, word, split: SpecialAmalgamSplit) -> AmalgamForm:
    """Reduced amalgam form of ``word``, each ``a_i`` in canonical form."""
    form = segments(normal_form(P, word), split.v)
    return AmalgamForm(tuple(normal_form(P, a) for a in form.a_parts), form.c_parts)


def is_reduced_amalgam_form(P: GraphProduct, form: AmalgamForm, split: SpecialAmalgamSplit) -> bool:
    """Middle segments leave ``G_B`` and every ``c_j`` is nontrivial.

    ``supp(a) <= B`` decides membership in ``G_B`` because supports of
    reduced words are exact.
    """
    if any(P.groups[c.vertex].is_identity(c.element) for c in form.c_parts):
        return False
    for a in form.a_parts[1:-1]:
        supp = {s.vertex for s in reduce_word(P, a)}
        if supp <= split.B:
            return False
    return True


# ---------------------------------------------------------------- homomorphisms


class GraphProductHom:
    """A homomorphism from a graph product into a finite group, given by one
    element map per vertex. Vertices without a map go to the identity."""

    def __init__(self, P: GraphProduct, target: FiniteGroup, maps: dict):
        self.P = P
        self.target = target
        self.maps = {v: tuple(m) for v, m in maps.items()}

    def __call__(self, word) -> int:
        T = self.target
        x = 0
        for v, e in word:
            m = self.maps.get(v)
            if m is not None:
                x = T.table[x][m[e]]
        return x

    def vertex_hom(self, v) -> Homomorphism:
        G = self.P.groups[v]
        return Homomorphism(G, self.target, self.maps.get(v, (0,) * G.order))

    def image_of(self, X) -> Subgroup:
        return generated(self.target, [y for v in X if v in self.maps for y in self.maps[v]])

    def violations(self) -> list:
        """Broken homomorphism or edge-commutation conditions."""
        out = []
        for v, m in self.maps.items():
            if not self.vertex_hom(v).is_homomorphism():
                out.append(("HomomorphismViolated", v))
        T = self.target
        for e in self.P.graph.edge_list():
            u, v = e
            if u in self.maps and v in self.maps:
                iu, iv = set(self.maps[u]), set(self.maps[v])
                if any(T.table[x][y] != T.table[y][x] for x in iu for y in iv):
                    out.append(("CommutationViolated", (u, v)))
        return out

    def compose(self, after: Homomorphism) -> "GraphProductHom":
        return GraphProductHom(self.P, after.target,
                               {v: tuple(after.images[y] for y in m) for v, m in self.maps.items()})

    def precompose_retraction(self, X) -> "GraphProductHom":
        """``self`` o ``rho_X``."""
        return GraphProductHom(self.P, self.target, {v: m for v, m in self.maps.items() if v in X})


class SpecialAmalgam:
    """``A *_B C`` for finite ``A`` and ``C`` and a subgroup ``B`` of ``A``.

    Elements are tuples of letters ``("A", a)`` / ``("C", c)``. The word
    problem is solved by reduced forms: a reduced form with ``n >= 1`` is
    never trivial.
    """

    def __init__(self, A: FiniteGroup, B: Subgroup, C: FiniteGroup):
        self.A, self.B, self.C = A, B, C

    def reduced(self, letters):
        """Reduced form as ``(a_parts, c_parts)``."""
        A, C, B = self.A, self.C, self.B
        a_parts, c_parts = [0], []
        for side, x in letters:
            if side == "A":
                a_parts[-1] = A.table[a_parts[-1]][x]
            elif side == "C":
                if x != 0:
                    c_parts.append(x)
                    a_parts.append(0)
            else:
                raise ValueError(f"unknown side {side!r}")
        while True:
            for i in range(1, len(a_parts) - 1):
                if a_parts[i] in B:
                    # c_i b c_{i+1} = b c_i c_{i+1}
                    a_parts[i - 1] = A.table[a_parts[i - 1]][a_parts[i]]
                    c = C.table[c_parts[i - 1]][c_parts[i]]
                    if c == 0:
                        a_parts[i - 1] = A.table[a_parts[i - 1]][a_parts[i + 1]]
                        del a_parts[i:i + 2]
                        del c_parts[i - 1:i + 1]
                    else:
                        c_parts[i - 1] = c
                        del a_parts[i]
                        del c_parts[i]
                    break
            else:
                return tuple(a_parts), tuple(c_parts)

    def is_trivial(self, letters) -> bool:
        a_parts, c_parts = self.reduced(letters)
        return not c_parts and a_parts[0] == 0

    def is_reduced_form(self, a_parts, c_parts) -> bool:
        return all(c != 0 for c in c_parts) and all(a not in self.B for a in a_parts[1:-1])


def form_letters(a_parts, c_parts) -> tuple:
    out = [("A", a_parts[0])]
    for c, a in zip(c_parts, a_parts[1:]):
        out += [("C", c), ("A", a)]
    return tuple(out)


@dataclass
class HomPairExtension:
    split: SpecialAmalgamSplit
    psi_A: GraphProductHom
    psi_C: Homomorphism

    def target(self) -> SpecialAmalgam:
        """``Q *_{psi_A(G_B)} S``."""
        return SpecialAmalgam(self.psi_A.target, self.psi_A.image_of(self.split.B), self.psi_C.target)


def extend_hom_pair(ext: HomPairExtension, form: AmalgamForm):
    """Image ``psi_A(a0) psi_C(c1) ... psi_A(an)`` of an amalgam form.

    Returns ``(a_parts, c_parts, reduced)``; when ``reduced`` holds the image
    is a reduced form in the target amalgam and hence nontrivial if ``n >= 1``.
    """
    v = ext.split.v
    for a in form.a_parts:
        for s in a:
            if s.vertex == v or s.vertex not in ext.split.A:
                raise UndefinedImage(f"a-part syllable on {s.vertex!r} outside G_A")
    for c in form.c_parts:
        if c.vertex != v:
            raise UndefinedImage(f"c-part syllable on {c.vertex!r}, expected {v!r}")
    a_img = tuple(ext.psi_A(a) for a in form.a_parts)
    c_img = tuple(ext.psi_C(c.element) for c in form.c_parts)
    return a_img, c_img, ext.target().is_reduced_form(a_img, c_img)

