import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from loopkit.errors import DegreeMismatch, EnumerationBoundExceeded, NotContained
from loopkit.permgrp import (
    PermGroup,
    center,
    conjugacy_class,
    conjugacy_classes,
    core,
    coset_action,
    derived_subgroup,
    format_group_text,
    identity_perm,
    is_identity,
    normal_closure,
    normalizer_of_subgroup,
    o2,
    o2prime,
    o2residual,
    odd_core,
    p_part,
    parse_group_text,
    pconj,
    perm_p_part,
    pinv,
    pmul,
    pointwise_stabilizer,
    porder,
    ppow,
    sylow,
    sylow_containing,
)

S3 = PermGroup(3, [(1, 0, 2), (1, 2, 0)])
S4 = PermGroup(4, [(1, 0, 2, 3), (1, 2, 3, 0)])
A4 = PermGroup(4, [(1, 0, 3, 2), (1, 2, 0, 3)])
D4 = PermGroup(4, [(1, 2, 3, 0), (3, 2, 1, 0)])
C2 = PermGroup(2, [(1, 0)])


def dihedral_group(n):
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return PermGroup(n, [rot, ref])


def symmetric_group(n):
    swap = tuple([1, 0] + list(range(2, n)))
    cyc = tuple(list(range(1, n)) + [0])
    return PermGroup(n, [swap, cyc])


class TestArithmetic:
    def test_compose_left_to_right(self):
        p = (1, 2, 0)
        q = (0, 2, 1)
        assert pmul(p, q) == (2, 1, 0)
        assert pmul(p, pinv(p)) == (0, 1, 2)

    def test_order_and_powers(self):
        p = (1, 2, 3, 4, 0)
        assert porder(p) == 5
        assert ppow(p, 5) == identity_perm(5)
        assert ppow(p, -1) == pinv(p)

    def test_p_part(self):
        assert p_part(96, 2) == 32
        assert p_part(96, 3) == 3
        g = (1, 2, 3, 4, 5, 0)  # order 6
        assert porder(perm_p_part(g, 2)) == 2
        assert porder(perm_p_part(g, 3)) == 3

    @given(st.permutations(list(range(6))), st.permutations(list(range(6))))
    @settings(max_examples=50, deadline=None)
    def test_inverse_product_property(self, a, b):
        a, b = tuple(a), tuple(b)
        assert pinv(pmul(a, b)) == pmul(pinv(b), pinv(a))


class TestChain:
    @pytest.mark.parametrize("grp,order", [
        (S3, 6), (S4, 24), (A4, 12), (D4, 8), (C2, 2),
        (PermGroup(4, []), 1),
    ])
    def test_orders(self, grp, order):
        assert grp.order() == order

    def test_chain_invariants(self):
        # product of fundamental orbit lengths is the order; generators sift
        for grp in (S4, A4, D4, symmetric_group(5)):
            prod = 1
            for lvl in grp._levels:
                prod *= len(lvl.transversal)
            assert prod == grp.order()
            assert all(grp.contains(g) for g in grp.generators)
            assert all(grp.contains(g) for g in grp.strong_generators)

    def test_degree_mismatch(self):
        with pytest.raises(DegreeMismatch):
            PermGroup(3, [(1, 0)])
        with pytest.raises(DegreeMismatch):
            S3.contains((1, 0))

    def test_membership(self):
        assert S4.contains((1, 2, 3, 0))
        assert not A4.contains((1, 0, 2, 3))
        assert A4.contains((1, 2, 0, 3))

    def test_elements_deterministic_and_complete(self):
        els = S4.elements()
        assert len(els) == 24 and len(set(els)) == 24
        assert els == S4.elements()

    def test_enumeration_bound(self):
        with pytest.raises(EnumerationBoundExceeded):
            symmetric_group(8).elements(bound=1000)

    @given(st.lists(st.sampled_from(range(4)), min_size=1, max_size=6))
    @settings(max_examples=50, deadline=None)
    def test_word_membership(self, word):
        gens = S4.generators
        w = identity_perm(4)
        for i in word:
            w = pmul(w, gens[i % len(gens)])
        assert S4.contains(w)

    def test_coset_canon_labels_cosets(self):
        H = pointwise_stabilizer(S4, (0,))
        labels = {H.coset_canon(g) for g in S4.elements()}
        assert len(labels) == 4


class TestSubgroups:
    def test_pointwise_stabilizer(self):
        H = pointwise_stabilizer(S4, (0,))
        assert H.order() == 6
        assert all(g[0] == 0 for g in H.generators)
        H2 = pointwise_stabilizer(S4, (0, 1))
        assert H2.order() == 2

    def test_is_normal(self):
        assert S4.is_normal_subgroup(A4)
        assert not S4.is_normal_subgroup(pointwise_stabilizer(S4, (0,)))
        assert S3.is_normal_subgroup(PermGroup(3, [(1, 2, 0)]))

    def test_normal_closure(self):
        ncl = normal_closure(S4, [(1, 0, 2, 3)])
        assert ncl.order() == 24
        ncl3 = normal_closure(S3, [(1, 2, 0)])
        assert ncl3.order() == 3
        with pytest.raises(NotContained):
            normal_closure(A4, [(1, 0, 2, 3)])

    def test_derived_series(self):
        assert derived_subgroup(S4).order() == 12
        assert derived_subgroup(A4).order() == 4
        assert derived_subgroup(D4).order() == 2

    def test_core(self):
        H = pointwise_stabilizer(S4, (0,))
        assert core(S4, H).order() == 1
        assert core(S4, A4).order() == 12
        v4 = derived_subgroup(A4)
        assert core(S4, PermGroup(4, v4.generators)).order() == 4

    def test_center(self):
        assert center(D4).order() == 2
        assert center(S4).order() == 1
        ea = PermGroup(4, [(1, 0, 2, 3), (0, 1, 3, 2)])
        assert center(ea).order() == 4

    def test_coset_action(self):
        H = pointwise_stabilizer(S4, (0,))
        q, act = coset_action(S4, H)
        assert q.degree == 4 and q.order() == 24
        assert is_identity(act(identity_perm(4)))


class TestClasses:
    def test_s3_classes(self):
        sizes = sorted(s for _, s in conjugacy_classes(S3))
        assert sizes == [1, 2, 3]

    def test_s4_classes(self):
        sizes = sorted(s for _, s in conjugacy_classes(S4))
        assert sizes == [1, 3, 6, 6, 8]

    def test_class_of_transposition(self):
        cls = conjugacy_class(S4, (1, 0, 2, 3))
        assert len(cls) == 6

    def test_reps_are_minimal(self):
        for rep, _ in conjugacy_classes(S4):
            assert rep == min(conjugacy_class(S4, rep))


class TestCharacteristicSubgroups:
    def test_odd_core(self):
        assert odd_core(S3).order() == 3
        assert odd_core(S4).order() == 1
        assert odd_core(A4).order() == 1

    def test_o2(self):
        assert o2(D4).order() == 8
        assert o2(S4).order() == 4
        assert o2(S3).order() == 1

    def test_o2prime(self):
        assert o2prime(S3).order() == 6
        assert o2prime(S4).order() == 24
        c6 = PermGroup(6, [(1, 2, 3, 4, 5, 0)])
        assert o2prime(c6).order() == 2
        assert (c6.order() // o2prime(c6).order()) % 2 == 1

    def test_o2residual(self):
        assert o2residual(S3).order() == 3
        assert o2residual(S4).order() == 12
        assert o2residual(D4).order() == 1

    def test_cores_are_normal(self):
        for G in (S3, S4, A4, D4, dihedral_group(6)):
            for N in (odd_core(G), o2(G), o2prime(G), o2residual(G)):
                assert G.is_normal_subgroup(N) or N.order() == 1


class TestSylow:
    @pytest.mark.parametrize("G", [S3, S4, A4, D4,
                                   dihedral_group(6), dihedral_group(12),
                                   symmetric_group(5), symmetric_group(6)])
    def test_sylow_orders_exact(self, G):
        n = G.order()
        for p in (2, 3, 5, 7, 11, 13):
            if n % p == 0:
                P = sylow(G, p)
                assert P.order() == p_part(n, p), (n, p)
                assert G.contains_subgroup(P)

    def test_sylow_of_odd_group(self):
        c15 = PermGroup(15, [tuple((i + 1) % 15 for i in range(15))])
        assert sylow(c15, 2).order() == 1

    def test_sylow_containing(self):
        P0 = PermGroup(4, [(1, 0, 3, 2)])
        P = sylow_containing(S4, P0, 2)
        assert P.order() == 8
        assert P.contains_subgroup(P0)

    def test_normalizer(self):
        P = sylow(S4, 3)
        N = normalizer_of_subgroup(S4, P)
        assert N.order() == 6
        assert N.contains_subgroup(P)


class TestTextFormat:
    def test_round_trip(self):
        text = format_group_text(S4)
        G = parse_group_text(text)
        assert G.order() == 24 and G.degree == 4

    def test_bad_counts(self):
        with pytest.raises(ValueError):
            parse_group_text("3 1 0 1")
