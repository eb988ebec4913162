import itertools

import pytest

from graphprod.algebra import (
    ClassTag,
    Homomorphism,
    class_membership,
    cyclic_group,
    direct_product,
    enumerate_homs,
    generated,
    homomorphisms,
    normal_subgroups,
    quotient,
    subgroup,
    subgroups,
    symmetric_group,
    trivial_subgroup,
    validate_group,
    whole,
)
from graphprod.catalog import by_name, catalog
from graphprod.errors import (
    BudgetExceeded,
    MalformedTable,
    NoIdentity,
    NoInverse,
    NotAssociative,
    NotNormal,
    OrderOverflow,
)

from conftest import S3, Z2, Z3, alternating, transposition

V4 = direct_product(Z2, Z2)[0]
TAGS = [ClassTag("Finite"), ClassTag("PGroup", 2), ClassTag("PGroup", 3), ClassTag("Solvable"),
        ClassTag("FiniteSolvable"), ClassTag("Abelian"), ClassTag("Nilpotent")]


def brute_normal_subgroups(G):
    out = []
    for r in range(1, G.order + 1):
        for s in itertools.combinations(range(G.order), r):
            s = set(s)
            if 0 not in s:
                continue
            if not all(G.table[a][G.inverse[b]] in s for a in s for b in s):
                continue
            if all(G.conjugate(g, x) in s for g in G for x in s):
                out.append(tuple(sorted(s)))
    return sorted(out)


class TestValidate:
    def test_trivial(self):
        G = validate_group([[0]])
        assert G.order == 1 and G.inverse == (0,)

    def test_z2(self):
        G = validate_group([[0, 1], [1, 0]])
        assert G.order == 2 and G.inverse == (0, 1)

    def test_swapped_entries_break_associativity(self):
        t = [list(r) for r in S3.table]
        t[1][2], t[2][1] = t[2][1], t[1][2]
        if t[1][2] == t[2][1]:  # commuting pair: swap a different one
            t[1][3], t[3][1] = t[3][1], t[1][3]
        with pytest.raises(NotAssociative):
            validate_group(t)

    def test_malformed(self):
        with pytest.raises(MalformedTable):
            validate_group([[0, 1]])
        with pytest.raises(MalformedTable):
            validate_group([[0, 2], [1, 0]])
        with pytest.raises(MalformedTable):
            validate_group([])

    def test_no_identity(self):
        # constant table is associative but has no identity
        with pytest.raises(NoIdentity):
            validate_group([[1, 1], [1, 1]])

    def test_no_inverse(self):
        # the monoid {1, 0} under multiplication, identity at index 0
        with pytest.raises(NoInverse):
            validate_group([[0, 1], [1, 1]])

    def test_identity_relabelled_to_zero(self):
        # Z2 with identity stored at index 1
        G = validate_group([[1, 0], [0, 1]])
        assert G.table == ((0, 1), (1, 0))
        assert G.labels == ("1", "0")

    def test_inverse_of_product(self):
        for G in catalog():
            if G.order > 24:
                continue
            for a in G:
                for b in G:
                    assert G.inv(G.mul(a, b)) == G.mul(G.inv(b), G.inv(a))


class TestNormalSubgroups:
    def test_z2(self):
        assert [N.elements for N in normal_subgroups(Z2)] == [(0,), (0, 1)]

    def test_s3_against_brute_force(self):
        got = sorted(N.elements for N in normal_subgroups(S3))
        assert got == brute_normal_subgroups(S3)
        assert [N.order for N in normal_subgroups(S3)] == [1, 3, 6]

    def test_klein_four(self):
        assert len(normal_subgroups(V4)) == 5
        assert sorted(N.elements for N in normal_subgroups(V4)) == brute_normal_subgroups(V4)

    @pytest.mark.parametrize("name", ["D8", "Q8", "Dic3", "A4", "C4xC2"])
    def test_catalog_groups_against_brute_force(self, name):
        G = by_name(name)
        assert sorted(N.elements for N in normal_subgroups(G)) == brute_normal_subgroups(G)

    def test_subgroup_counts(self):
        assert len(subgroups(S3)) == 6
        assert len(subgroups(symmetric_group(4))) == 30


class TestQuotient:
    def test_by_trivial(self):
        Q, p = quotient(S3, trivial_subgroup(S3))
        assert Q.order == 6 and len(set(p.images)) == 6

    def test_s3_mod_a3(self):
        Q, p = quotient(S3, alternating(S3))
        assert Q.order == 2
        assert p.is_homomorphism()
        assert p.kernel().elements == alternating(S3).elements

    def test_by_whole(self):
        Q, _ = quotient(S3, whole(S3))
        assert Q.order == 1

    def test_not_normal(self):
        with pytest.raises(NotNormal):
            quotient(S3, generated(S3, [transposition(S3)]))

    def test_round_trip_over_catalog(self):
        for G in catalog():
            if G.order > 16:
                continue
            for N in normal_subgroups(G):
                Q, p = quotient(G, N)
                assert Q.order * N.order == G.order
                assert p.is_homomorphism() and set(p.images) == set(Q)


class TestDirectProduct:
    def test_trivial_factor(self):
        P, _, p2, _ = direct_product(validate_group([[0]]), S3)
        assert P.order == 6 and p2.is_homomorphism()

    def test_klein(self):
        assert all(V4.element_order(x) <= 2 for x in V4)

    def test_z2_z3_cyclic(self):
        P, p1, p2, pair = direct_product(Z2, Z3)
        assert P.element_order(pair(1, 1)) == 6
        for a in Z2:
            for b in Z3:
                x = pair(a, b)
                assert (p1(x), p2(x)) == (a, b)
        assert p1.is_homomorphism() and p2.is_homomorphism()

    def test_overflow(self):
        with pytest.raises(OrderOverflow):
            direct_product(S3, S3, cap=30)


class TestClassMembership:
    def test_trivial_group_in_every_class(self):
        T = validate_group([[0]])
        assert all(class_membership(T, tag) for tag in TAGS)

    def test_s3(self):
        assert class_membership(S3, ClassTag("Solvable"))
        assert not class_membership(S3, ClassTag("PGroup", 3))
        assert not class_membership(S3, ClassTag("Nilpotent"))

    def test_z4_is_2_group(self):
        assert class_membership(cyclic_group(4), ClassTag("PGroup", 2))

    def test_s5_not_solvable(self):
        assert not class_membership(symmetric_group(5), ClassTag("Solvable"))

    def test_chain_of_classes(self):
        ab, nil, sol = ClassTag("Abelian"), ClassTag("Nilpotent"), ClassTag("Solvable")
        for G in catalog():
            if class_membership(G, ab):
                assert class_membership(G, nil)
            if class_membership(G, nil):
                assert class_membership(G, sol)

    def test_tag_validation(self):
        with pytest.raises(ValueError):
            ClassTag("PGroup", 4)
        with pytest.raises(ValueError):
            ClassTag("Perfect")
        assert ClassTag.parse("PGroup(5)") == ClassTag("PGroup", 5)
        assert str(ClassTag("PGroup", 5)) == "PGroup(5)"


class TestEnumerateHoms:
    def test_order_two_generator_into_z2(self):
        hs = list(enumerate_homs(["g"], [[("g", 2)]], Z2))
        assert [h.images for h in hs] == [(0,), (1,)]

    def test_z3_into_z2(self):
        hs = list(enumerate_homs(["g"], [[("g", 3)]], Z2))
        assert [h.images for h in hs] == [(0,)]

    def test_commuting_involutions_into_s3(self):
        rels = [[("a", 2)], [("b", 2)], [("a", 1), ("b", 1), ("a", -1), ("b", -1)]]
        hs = list(enumerate_homs(["a", "b"], rels, S3))
        small = [x for x in S3 if S3.element_order(x) <= 2]
        expected = [(x, y) for x in small for y in small if S3.mul(x, y) == S3.mul(y, x)]
        assert sorted(h.images for h in hs) == sorted(expected)
        assert [h.images for h in hs] == sorted(h.images for h in hs)

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            list(enumerate_homs(["g"], [], S3, budget=3))
        assert len(list(enumerate_homs(["g"], [], S3, budget=6))) == 6

    def test_deterministic(self):
        a = [h.images for h in enumerate_homs(["x", "y"], [[("x", 2)], [("y", 3)]], S3)]
        b = [h.images for h in enumerate_homs(["x", "y"], [[("x", 2)], [("y", 3)]], S3)]
        assert a == b

    @pytest.mark.parametrize("src,dst", [("S3", "C2"), ("C4", "D8"), ("Q8", "S3"), ("C2^2", "S3")])
    def test_full_maps_match_brute_force(self, src, dst):
        G, T = by_name(src), by_name(dst)
        brute = []
        for images in itertools.product(range(T.order), repeat=G.order):
            if images[0] == 0 and Homomorphism(G, T, images).is_homomorphism():
                brute.append(images)
        assert sorted(h.images for h in homomorphisms(G, T)) == sorted(brute)


def test_catalog_contents():
    names = [G.name for G in catalog()]
    assert len(names) == len(set(names))
    orders = [G.order for G in catalog()]
    assert orders == sorted(orders)
    # all 42 groups of order <= 16 (including the trivial group) plus S4, S5 and two Heisenberg groups
    assert sum(1 for n in orders if n <= 16) == 42
    assert {"S4", "S5", "Heis3", "Heis5"} <= set(names)
