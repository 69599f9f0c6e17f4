import math
from fractions import Fraction

import pytest

from loopkit.errors import ClassNotFound, NonIntegralNJ, UnsupportedQ
from loopkit.pgl import (
    GaloisField,
    borel_orbits_on_sylow2,
    build_pgl2,
    check_pgllemma3,
    counting_table,
    is_fermat_prime,
    loop_order_formula,
    outer_involution_class,
    sylow_lambda_count,
)
from loopkit.permgrp import conjugacy_classes, porder


class TestGaloisField:
    @pytest.mark.parametrize("q", [5, 7, 9, 13, 17, 25, 27])
    def test_field_axioms(self, q):
        F = GaloisField(q)
        for a in range(q):
            assert F.add(a, 0) == a
            assert F.mul(a, 1) == a
            assert F.add(a, F.neg(a)) == 0
            if a:
                assert F.mul(a, F.inv(a)) == 1
        # no zero divisors, commutativity on a sample
        for a in range(1, min(q, 12)):
            for b in range(1, min(q, 12)):
                assert F.mul(a, b) == F.mul(b, a)
                assert F.mul(a, b) != 0

    def test_gf9_pinned_polynomial(self):
        assert GaloisField(9).poly == (2, 1)  # x^2 + x + 2

    def test_generator_order(self):
        for q in (5, 9, 13, 25):
            F = GaloisField(q)
            seen = set()
            x = 1
            for _ in range(q - 1):
                x = F.mul(x, F.generator)
                seen.add(x)
            assert len(seen) == q - 1

    def test_distributivity_gf9(self):
        F = GaloisField(9)
        for a in range(9):
            for b in range(9):
                for c in range(9):
                    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


class TestModels:
    @pytest.mark.parametrize("q,order,borel", [
        (5, 120, 20), (9, 720, 72), (13, 2184, 156), (17, 4896, 272)])
    def test_orders(self, q, order, borel):
        m = build_pgl2(q)
        assert m.npoints == q + 1
        assert m.group.order() == order
        assert m.borel.order() == borel
        assert m.psl.order() == order // 2

    def test_triply_transitive(self):
        m = build_pgl2(5)
        # sharply 3-transitive: stabilizer chain orbits (q+1)q(q-1)
        sizes = [len(lvl.transversal) for lvl in m.group._levels]
        assert sorted(sizes, reverse=True)[:3] == [6, 5, 4]

    def test_rejects_bad_q(self):
        for q in (3, 4, 8, 15, 514, 1024):
            with pytest.raises(UnsupportedQ):
                build_pgl2(q)


class TestInvolutionClasses:
    @pytest.mark.parametrize("q,size,cent", [(5, 10, 12), (9, 36, 20), (17, 136, 36)])
    def test_outer_class(self, q, size, cent):
        m = build_pgl2(q)
        rep, got = outer_involution_class(m)
        assert got == size == q * (q - 1) // 2
        assert porder(rep) == 2 and not m.psl.contains(rep)
        assert m.group.order() // got == cent == 2 * (q + 1)

    def test_inner_centralizer(self):
        m = build_pgl2(5)
        inner = [s for r, s in conjugacy_classes(m.group)
                 if porder(r) == 2 and m.psl.contains(r)]
        assert inner == [m.group.order() // (2 * (5 - 1))]

    def test_exactly_two_involution_classes(self):
        m = build_pgl2(9)
        invol = [s for r, s in conjugacy_classes(m.group) if porder(r) == 2]
        assert len(invol) == 2


class TestBorelOrbits:
    @pytest.mark.parametrize("q", [5, 9, 17])
    def test_orbit_sizes(self, q):
        m = build_pgl2(q)
        assert borel_orbits_on_sylow2(m) == (q, q * (q - 1) // 2)

    def test_sylow_count(self):
        # 15 Sylow 2-subgroups of PGL2(5), orbit sizes 5 + 10
        assert sum(borel_orbits_on_sylow2(build_pgl2(5))) == 15

    def test_pgllemma3_q5(self):
        assert check_pgllemma3(build_pgl2(5))


class TestCountingTable:
    def test_order96_regime(self):
        t = counting_table([5], 16)
        assert t.nJ[()] == 16
        assert t.nJ[(0,)] == 8
        assert t.cJ[(0,)] == 10
        assert sylow_lambda_count(t) == 32

    def test_e_zero(self):
        t = counting_table([], 8)
        assert t.nJ == {(): Fraction(8)}
        assert sylow_lambda_count(t) == 8

    def test_proof_identity(self):
        assert (5 + 1) * (9 + 1) == 60 == 1 + 5 + 9 + 45

    @pytest.mark.parametrize("n0", [1, 2, 16])
    @pytest.mark.parametrize("qs", [(), (5,), (9,), (17,), (5, 9), (5, 17),
                                    (9, 17), (5, 9, 17)])
    def test_consistency_sweep(self, qs, n0):
        t = counting_table(qs, n0, require_integral=False)
        assert sylow_lambda_count(t) == 2 ** len(qs) * n0
        for J in t.nJ:
            assert t.cJ[J] == math.prod(qs[j] * (qs[j] - 1) // 2 for j in J)

    def test_non_integral_raises(self):
        with pytest.raises(NonIntegralNJ):
            counting_table([17], 2)

    def test_rejects_non_admissible_q(self):
        with pytest.raises(UnsupportedQ):
            counting_table([7], 4)
        with pytest.raises(UnsupportedQ):
            counting_table([13], 4)

    def test_rejects_bad_n_empty(self):
        with pytest.raises(ValueError):
            counting_table([5], 3)


class TestFormulas:
    def test_fermat_primes(self):
        assert [q for q in range(3, 70000) if is_fermat_prime(q)] == \
            [3, 5, 17, 257, 65537]

    def test_loop_order(self):
        assert loop_order_formula(4, [5]) == (96, 32)
        assert loop_order_formula(0, []) == (1, 1)
        assert loop_order_formula(2, [5, 17]) == (4 * 6 * 18, 16)

    def test_loop_order_rejects(self):
        with pytest.raises(ValueError):
            loop_order_formula(-1, [])
        with pytest.raises(UnsupportedQ):
            loop_order_formula(0, [7])
