import itertools

import pytest
from hypothesis import given, settings, strategies as st

from graphprod.algebra import Homomorphism, identity_hom
from graphprod.amalgam import (
    AmalgamForm,
    GraphProductHom,
    HomPairExtension,
    SpecialAmalgam,
    amalgam_form,
    amalgam_split,
    extend_hom_pair,
    is_reduced_amalgam_form,
    retract,
    segments,
)
from graphprod.errors import UndefinedImage, UnknownVertex
from graphprod.graph import GraphProduct, edgeless, path
from graphprod.words import Syllable, normal_form, oracle_class

from conftest import S3, Z2, Z3, alternating, graph_family, transposition

u, v, w = "u", "v", "w"


class TestRetract:
    def test_empty_set(self, edge_plus_isolated):
        assert retract(edge_plus_isolated, [], [Syllable(u, 1), Syllable(w, 1)]) == ()

    def test_everything(self, edge_plus_isolated):
        word = [Syllable(w, 1), Syllable(u, 1), Syllable(w, 1)]
        assert retract(edge_plus_isolated, [u, v, w], word) == normal_form(edge_plus_isolated, word)

    def test_drops_outside(self, edge_plus_isolated):
        word = [Syllable(u, 1), Syllable(w, 1), Syllable(v, 2)]
        got = retract(edge_plus_isolated, [u, v], word)
        assert got == normal_form(edge_plus_isolated, [Syllable(u, 1), Syllable(v, 2)])
        assert {s.vertex for s in got} <= {u, v}

    def test_unknown_vertex(self, edge_plus_isolated):
        with pytest.raises(UnknownVertex):
            retract(edge_plus_isolated, ["x"], [])


class TestSplit:
    def test_single_vertex(self):
        P = GraphProduct(edgeless([v]), {v: Z2})
        s = amalgam_split(P, v)
        assert (s.A, s.B, s.C) == (frozenset(), frozenset(), {v})

    def test_edge(self):
        P = GraphProduct(path([u, v]), {u: Z2, v: Z2})
        s = amalgam_split(P, v)
        assert s.A == {u} and s.B == {u}

    def test_path_middle(self):
        P = GraphProduct(path([u, v, w]), {u: Z2, v: Z2, w: Z2})
        s = amalgam_split(P, v)
        assert s.A == {u, w} == s.B

    def test_unknown(self):
        with pytest.raises(UnknownVertex):
            amalgam_split(GraphProduct(edgeless([v]), {v: Z2}), "x")


class TestAmalgamForm:
    def test_support_avoids_v(self, edge_plus_isolated):
        split = amalgam_split(edge_plus_isolated, w)
        form = amalgam_form(edge_plus_isolated, [Syllable(u, 1)], split)
        assert form.n == 0 and form.a_parts == ((Syllable(u, 1),),)

    def test_single_c(self, edge_plus_isolated):
        split = amalgam_split(edge_plus_isolated, w)
        form = amalgam_form(edge_plus_isolated, [Syllable(w, 1)], split)
        assert form.n == 1 and form.a_parts == ((), ())

    def test_edgeless_example(self):
        P = GraphProduct(edgeless([u, v]), {u: Z2, v: Z3})
        word = [Syllable(u, 1), Syllable(v, 1), Syllable(u, 1)]
        form = amalgam_form(P, word, amalgam_split(P, v))
        assert form.n == 1
        assert form.a_parts == ((Syllable(u, 1),), (Syllable(u, 1),))
        assert form.c_parts == (Syllable(v, 1),)
        assert is_reduced_amalgam_form(P, form, amalgam_split(P, v))


PRESENTATIONS = [GraphProduct(g, {x: G for x, G in zip(g.vertices, (Z2, S3, Z3, Z2))})
                 for _, g in graph_family()]


@st.composite
def pres_word(draw, max_len=6):
    P = draw(st.sampled_from(PRESENTATIONS))
    syl = st.sampled_from([Syllable(x, e) for x in P.vertices for e in P.groups[x]])
    return P, tuple(draw(st.lists(syl, max_size=max_len)))


@settings(max_examples=300, deadline=None)
@given(pres_word(), st.data())
def test_form_round_trip_and_reducedness(pw, data):
    P, word = pw
    vtx = data.draw(st.sampled_from(P.vertices))
    split = amalgam_split(P, vtx)
    form = amalgam_form(P, word, split)
    assert normal_form(P, form.interleave()) == normal_form(P, word)
    assert is_reduced_amalgam_form(P, form, split)
    assert len(form.a_parts) == form.n + 1


@settings(max_examples=300, deadline=None)
@given(pres_word(), st.data())
def test_retraction_laws(pw, data):
    P, word = pw
    X = data.draw(st.sets(st.sampled_from(P.vertices)))
    Y = data.draw(st.sets(st.sampled_from(P.vertices)))
    assert retract(P, X, retract(P, Y, word)) == retract(P, X & Y, word)
    r = retract(P, X, word)
    assert retract(P, X, r) == r


class TestGraphProductHom:
    def test_violations(self):
        P = GraphProduct(path([u, v]), {u: S3, v: S3})
        ok = GraphProductHom(P, S3, {u: tuple(range(6))})
        assert ok.violations() == []
        both = GraphProductHom(P, S3, {u: tuple(range(6)), v: tuple(range(6))})
        assert ("CommutationViolated", (u, v)) in both.violations()
        bad = GraphProductHom(P, S3, {u: (1,) + tuple(range(1, 6))})
        assert ("HomomorphismViolated", u) in bad.violations()


class TestExtension:
    def setup_method(self):
        self.P = GraphProduct(edgeless([u, v]), {u: Z2, v: Z3})
        self.split = amalgam_split(self.P, v)
        self.form = amalgam_form(self.P, [Syllable(u, 1), Syllable(v, 1), Syllable(u, 1)], self.split)

    def test_trivial_maps(self):
        from graphprod.algebra import TRIVIAL

        ext = HomPairExtension(self.split, GraphProductHom(self.P, TRIVIAL, {u: (0, 0)}),
                               Homomorphism(Z3, TRIVIAL, (0, 0, 0)))
        a, c, _ = extend_hom_pair(ext, self.form)
        assert a == (0, 0) and c == (0,)

    def test_identity_maps(self):
        ext = HomPairExtension(self.split, GraphProductHom(self.P, Z2, {u: (0, 1)}), identity_hom(Z3))
        a, c, reduced = extend_hom_pair(ext, self.form)
        assert a == (1, 1) and c == (1,) and reduced

    def test_undefined(self):
        ext = HomPairExtension(self.split, GraphProductHom(self.P, Z2, {u: (0, 1)}), identity_hom(Z3))
        bad = AmalgamForm(((Syllable(v, 1),),), ())
        with pytest.raises(UndefinedImage):
            extend_hom_pair(ext, bad)


class TestSpecialAmalgam:
    def test_reduced_form_solves_word_problem(self):
        A3 = alternating(S3)
        am = SpecialAmalgam(S3, A3, Z3)
        r = next(x for x in A3.elements if x)
        t = transposition(S3)
        # b c b^-1 c^-1 is trivial since B commutes with C
        assert am.is_trivial([("A", r), ("C", 1), ("A", S3.inv(r)), ("C", 2)])
        assert not am.is_trivial([("A", t), ("C", 1), ("A", t), ("C", 2)])
        assert am.is_trivial([("C", 1), ("C", 2)])

    def test_segments_match_oracle_on_equal_words(self):
        P = GraphProduct(path([u, v, w]), {u: Z2, v: Z3, w: Z2})
        syl = [Syllable(x, 1) for x in P.vertices]
        for word in itertools.product(syl, repeat=3):
            forms = {(segments(r, v).n, segments(r, v).c_parts) for r in oracle_class(P, word)}
            assert len(forms) == 1
