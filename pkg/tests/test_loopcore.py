import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from loopkit import tables as tb
from loopkit.errors import (
    InvalidLoopTable,
    NoTwoSidedInverse,
    NotBol,
    NotNormal,
    OrderBoundExceeded,
)
from loopkit.loopcore import (
    Loop,
    LoopHom,
    canonical_quotient_hom,
    check_aip,
    check_bol,
    check_bruck,
    check_exponent_power_of_2,
    direct_product,
    element_order,
    enumerate_subloops,
    exponent,
    find_isomorphism,
    format_loop_text,
    is_associative,
    is_commutative,
    is_normal_subloop,
    is_soluble,
    loops_isomorphic,
    normal_subloops,
    parse_loop_text,
    quotient_loop,
    subloop_as_loop,
    subloop_closure,
)


# the non-Bol order-5 loop lives in conftest as the `nonbol5` fixture: the
# cyclic square of order 5 admits no 2x2 intercalate (2(c1-c2) = 0 mod 5
# forces c1 = c2), so non-Bol order-5 tables come from the search oracle.


def no_inverse5():
    """Order-5 loop in which element 2 has no two-sided inverse (frozen)."""
    return Loop([
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 3, 4, 0, 1],
        [3, 4, 1, 2, 0],
        [4, 2, 0, 1, 3],
    ])


class TestLoopType:
    def test_rejects_non_latin(self):
        with pytest.raises(InvalidLoopTable, match="row 1"):
            Loop([[0, 1], [1, 1]])
        with pytest.raises(InvalidLoopTable, match="column"):
            Loop([[0, 1, 2], [1, 2, 0], [2, 1, 0]])

    def test_rejects_identity_elsewhere(self):
        # C3 relabeled so the identity is element 1
        with pytest.raises(InvalidLoopTable):
            Loop([[2, 0, 1], [0, 1, 2], [1, 2, 0]])

    def test_translations(self):
        s3 = tb.symmetric3()
        for x in range(6):
            rho = s3.right_translation(x)
            lam = s3.left_translation(x)
            assert rho[0] == x and lam[0] == x
            assert sorted(rho) == list(range(6))

    def test_hashable(self):
        assert len({tb.cyclic(3), tb.cyclic(3), tb.cyclic(4)}) == 2


class TestIdentities:
    def test_groups_are_bol(self, groups16):
        for name, g in groups16:
            assert check_bol(g), name

    def test_aip_iff_abelian_on_groups(self, groups16):
        for name, g in groups16:
            assert check_aip(g) == is_commutative(g), name

    def test_s3_not_bruck(self):
        assert not check_bruck(tb.symmetric3())

    def test_order5_nonassociative_not_bol(self, nonbol5):
        assert nonbol5.n == 5
        assert not check_bol(nonbol5)

    def test_no_two_sided_inverse(self):
        with pytest.raises(NoTwoSidedInverse) as exc:
            check_aip(no_inverse5())
        assert exc.value.element == 2
        assert check_aip(tb.cyclic(5))

    def test_glauberman21_aip(self, loop21):
        assert check_aip(loop21)
        assert check_bruck(loop21)
        assert not is_associative(loop21)


class TestOrdersAndExponent:
    def test_element_orders_cyclic(self):
        c6 = tb.cyclic(6)
        assert element_order(c6, 1) == 6
        assert element_order(c6, 2) == 3
        assert element_order(c6, 3) == 2
        assert element_order(c6, 0) == 1

    def test_exponent(self, loop21):
        assert exponent(tb.elementary_abelian(3)) == 2
        assert exponent(tb.cyclic(12)) == 12
        assert exponent(loop21) == 21

    def test_exponent_power_of_2(self, na8):
        assert check_exponent_power_of_2(tb.elementary_abelian(4))
        assert check_exponent_power_of_2(na8)
        assert not check_exponent_power_of_2(tb.cyclic(6))

    def test_powers_need_bol(self, nonbol5):
        with pytest.raises(NotBol):
            element_order(nonbol5, 1)

    def test_power_bracketings_agree_on_bol_corpus(self, bruck_corpus_small):
        # left-iterated vs right-iterated powers agree for m <= n
        for name, loop in bruck_corpus_small:
            if loop.n > 24:
                continue
            for x in range(loop.n):
                left = right = x
                for _ in range(loop.n - 1):
                    left = loop.table[x][left]
                    right = loop.table[right][x]
                    assert left == right, (name, x)


class TestSubloops:
    def test_closure_trivial(self):
        assert subloop_closure(tb.cyclic(5), ()) == (0,)

    def test_closure_generator(self):
        assert subloop_closure(tb.cyclic(4), (1,)) == (0, 1, 2, 3)
        assert subloop_closure(tb.cyclic(4), (2,)) == (0, 2)

    def test_closure_in_glauberman21(self, loop21):
        for x in range(1, 21):
            size = len(subloop_closure(loop21, (x,)))
            assert size in (3, 7, 21)

    def test_enumerate_counts(self):
        assert len(enumerate_subloops(tb.cyclic(4))) == 3
        orders = sorted(len(s) for s in enumerate_subloops(tb.elementary_abelian(2)))
        assert orders == [1, 2, 2, 2, 4]

    def test_enumerate_subloops_glauberman21(self, loop21):
        subs = enumerate_subloops(loop21)
        assert all(21 % len(s) == 0 for s in subs)
        assert {len(s) for s in subs} == {1, 3, 7, 21}

    def test_order_bound(self):
        with pytest.raises(OrderBoundExceeded):
            enumerate_subloops(tb.cyclic(8), bound=4)

    def test_subgroup_counts_match_group_theory(self):
        # EA16 has 67 subgroups: 1 + 15 + 35 + 15 + 1
        assert len(enumerate_subloops(tb.elementary_abelian(4))) == 67
        # Q8: 1 + 1 + 3 + 1 = 6
        assert len(enumerate_subloops(tb.quaternion8())) == 6


class TestNormality:
    def test_group_normals_match(self, groups16):
        # for groups the loop criterion must match plain group normality
        for name, g in groups16:
            if g.n > 12:
                continue
            subs = enumerate_subloops(g)
            for S in subs:
                group_normal = _group_normal(g, S)
                assert is_normal_subloop(g, S) == group_normal, (name, S)

    def test_glauberman21_normal_subloop_of_order_7(self, loop21):
        ns = normal_subloops(loop21)
        assert any(len(N) == 7 for N in ns)
        assert (0,) in ns and tuple(range(21)) in ns

    def test_quotient(self):
        q = quotient_loop(tb.cyclic(4), (0, 2))
        assert q == tb.cyclic(2)
        with pytest.raises(NotNormal):
            quotient_loop(tb.symmetric3(), (0, 3))

    def test_quotient_hom(self, loop21):
        N = next(N for N in normal_subloops(loop21) if len(N) == 7)
        hom = canonical_quotient_hom(loop21, N)
        assert hom.is_valid()
        assert hom.target.n == 3

    def test_quotient_order(self, groups16):
        for name, g in groups16:
            if g.n > 8:
                continue
            for N in normal_subloops(g):
                assert quotient_loop(g, N).n == g.n // len(N)


def _group_normal(g, S):
    # textbook criterion for groups: xN = Nx for every x
    for x in range(g.n):
        left = {g.table[x][s] for s in S}
        right = {g.table[s][x] for s in S}
        if left != right:
            return False
    return True


class TestSolubility:
    def test_groups(self, groups16):
        for name, g in groups16:
            assert is_soluble(g), name  # all groups of order <= 16 are soluble

    def test_glauberman_loops(self, loop21, loop27):
        assert is_soluble(loop21)
        assert is_soluble(loop27)

    def test_na8(self, na8):
        assert is_soluble(na8)


class TestProductsAndIsomorphism:
    def test_direct_product_order(self):
        p = direct_product(tb.cyclic(3), tb.elementary_abelian(2))
        assert p.n == 12
        assert is_associative(p)

    def test_product_bruck_iff_both(self, loop21, na8):
        s3 = tb.symmetric3()
        assert check_bruck(direct_product(loop21, na8))
        assert not check_bruck(direct_product(s3, tb.cyclic(2)))
        assert not check_bruck(direct_product(tb.cyclic(2), s3))

    def test_product_swap_isomorphic(self):
        a, b = tb.cyclic(3), tb.elementary_abelian(2)
        assert loops_isomorphic(direct_product(a, b), direct_product(b, a))

    def test_non_isomorphic(self):
        assert not loops_isomorphic(tb.cyclic(4), tb.elementary_abelian(2))
        assert not loops_isomorphic(tb.dihedral(4), tb.quaternion8())

    def test_iso_finds_map(self):
        m = find_isomorphism(tb.cyclic(6), direct_product(tb.cyclic(2), tb.cyclic(3)))
        assert m is not None and m[0] == 0
        hom = LoopHom(tb.cyclic(6),
                      direct_product(tb.cyclic(2), tb.cyclic(3)), m)
        assert hom.is_valid()

    def test_glauberman_not_isomorphic_to_group(self, loop21):
        c21 = tb.cyclic(21)
        assert not loops_isomorphic(loop21, c21)


class TestTextFormat:
    def test_round_trip(self, loop21):
        assert parse_loop_text(format_loop_text(loop21)) == loop21

    def test_diagnostic_names_row(self):
        with pytest.raises(InvalidLoopTable, match="row 1"):
            parse_loop_text("2\n0 1\n1 1\n")

    def test_wrong_cell_count(self):
        with pytest.raises(InvalidLoopTable, match="expected"):
            parse_loop_text("2\n0 1\n1\n")


@given(st.integers(min_value=1, max_value=12))
@settings(max_examples=12, deadline=None)
def test_cyclic_is_bruck_iff_any(n):
    c = tb.cyclic(n)
    assert check_bol(c)
    assert check_aip(c)
    assert exponent(c) == n
