"""PGL2(q) on the projective line, and the involution counting lemmas.

The model is concrete: GF(q) u {oo} with the maps x -> x+1, x -> a*x (a a
generator of the multiplicative group) and x -> 1/x generating PGL2(q).
The counting side implements the class sizes |C_J| = prod q_j(q_j-1)/2 and
the triangular system whose solution is n_J = n_0 * 2^|J| / prod (q_j-1),
solved independently in exact rationals and compared against the closed
formula.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    ClassNotFound,
    EnumerationBoundExceeded,
    NonIntegralNJ,
    UnsupportedQ,
)
from .permgrp import (
    DEFAULT_ENUMERATION_BOUND,
    PermGroup,
    conjugacy_classes,
    derived_subgroup,
    p_part,
    pconj,
    pointwise_stabilizer,
    porder,
    sylow,
)

MAX_Q = 512

#: GF(9) is pinned to x^2 + x + 2 so its generators never drift between
#: runs; other extension fields take the lexicographically first monic
#: irreducible polynomial.
_PINNED_POLYS = {9: (2, 1)}


def _factor(n: int) -> dict[int, int]:
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and _factor(n) == {n: 1}


def is_fermat_prime(q: int) -> bool:
    """q = 2^(2^k) + 1 and prime; capped at 65537, the largest known."""
    if q > 65537 or q < 3:
        return False
    m = q - 1
    if m & (m - 1):
        return False
    e = m.bit_length() - 1
    if e & (e - 1):
        return False
    return is_prime(q)


class GaloisField:
    """GF(q) for odd prime powers q, elements encoded as 0..q-1.

    An element's base-p digits are its polynomial coefficients (constant
    digit first).  Prime fields reduce mod p; extensions reduce modulo the
    chosen irreducible polynomial.
    """

    def __init__(self, q: int):
        fac = _factor(q)
        if len(fac) != 1:
            raise UnsupportedQ(f"{q} is not a prime power")
        (self.p, self.k), = fac.items()
        self.q = q
        if self.k == 1:
            self.poly = ()
        else:
            self.poly = self._choose_poly()
        self._mul = self._build_mul_table()
        self.generator = self._find_generator()

    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return out

    def _undigits(self, ds) -> int:
        out = 0
        for d in reversed(ds):
            out = out * self.p + d
        return out

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        da, db = self._digits(a), self._digits(b)
        return self._undigits([(x + y) % self.p for x, y in zip(da, db)])

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        return self._undigits([(-x) % self.p for x in self._digits(a)])

    def _poly_mul(self, a: int, b: int, red) -> int:
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % self.p
        for i in range(len(prod) - 1, self.k - 1, -1):
            c = prod[i]
            if c:
                prod[i] = 0
                for j, r in enumerate(red):
                    prod[i - self.k + j] = (prod[i - self.k + j] + c * r) % self.p
        return self._undigits(prod[:self.k])

    def _choose_poly(self):
        """Coefficients (c_0..c_{k-1}) of the monic irreducible x^k + ... + c_0."""
        if self.q in _PINNED_POLYS:
            return _PINNED_POLYS[self.q]
        for coeffs in itertools.product(range(self.p), repeat=self.k):
            if self._poly_irreducible(coeffs):
                return coeffs
        raise UnsupportedQ(f"no irreducible polynomial found for {self.q}")

    def _poly_irreducible(self, coeffs) -> bool:
        # x^k = -(c_{k-1} x^{k-1} + ... + c_0) gives the reduction row
        red = tuple((-c) % self.p for c in coeffs)
        for a in range(self.p, self.q):
            for b in range(self.p, a + 1):
                if self._poly_mul(a, b, red) == 0:
                    return False
        # linear factors: a root r makes (x - r) a zero divisor via x=r eval
        for r in range(self.p):
            acc = 1 % self.p
            val = coeffs[0]
            for c in coeffs[1:] + (1,):
                acc = (acc * r) % self.p
                val = (val + c * acc) % self.p
            if val == 0:
                return False
        return True

    def _build_mul_table(self):
        if self.k == 1:
            return None
        red = tuple((-c) % self.p for c in self.poly)
        return [[self._poly_mul(a, b, red) for b in range(self.q)]
                for a in range(self.q)]

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a * b) % self.p
        return self._mul[a][b]

    def power(self, a: int, e: int) -> int:
        out = 1
        while e:
            if e & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            e >>= 1
        return out

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in GF(q)")
        return self.power(a, self.q - 2)

    def _find_generator(self) -> int:
        primes = list(_factor(self.q - 1))
        for g in range(1, self.q):
            if all(self.power(g, (self.q - 1) // r) != 1 for r in primes):
                return g
        raise UnsupportedQ(f"no multiplicative generator for {self.q}")  # pragma: no cover


@dataclass(frozen=True, eq=False)
class PglModel:
    """PGL2(q) acting on the q+1 points of the projective line.

    Points 0..q-1 are the field elements and point q is infinity; `borel`
    stabilizes infinity and `psl` is the derived subgroup.
    """

    q: int
    field: GaloisField
    group: PermGroup
    psl: PermGroup
    borel: PermGroup

    @property
    def npoints(self) -> int:
        return self.q + 1

    @property
    def infinity(self) -> int:
        return self.q


def build_pgl2(q: int) -> PglModel:
    if q % 2 == 0 or q < 5 or q > MAX_Q:
        raise UnsupportedQ(
            f"q = {q}: need an odd prime power with 5 <= q <= {MAX_Q}")
    F = GaloisField(q)
    inf = q
    translate = tuple([F.add(x, 1) for x in range(q)] + [inf])
    scale = tuple([F.mul(F.generator, x) for x in range(q)] + [inf])
    invert = tuple([inf] + [F.inv(x) for x in range(1, q)] + [0])
    group = PermGroup(q + 1, [translate, scale, invert], base_hint=(inf, 0, 1))
    expected = q * (q - 1) * (q + 1)
    assert group.order() == expected, (group.order(), expected)
    borel = pointwise_stabilizer(group, (inf,))
    assert borel.order() == q * (q - 1)
    psl = derived_subgroup(group)
    assert psl.order() == expected // 2
    return PglModel(q=q, field=F, group=group, psl=psl, borel=borel)


def outer_involution_class(m: PglModel,
                           bound: int = DEFAULT_ENUMERATION_BOUND):
    """The unique class of involutions outside PSL2(q): (representative, size).

    Also verifies the centralizer orders from the class-size lemma: 2(q+1)
    for the outer class and 2(q-1) for the inner one (q = 1 mod 4 or q = 9).
    """
    q = m.q
    order = m.group.order()
    outer = []
    inner = []
    for rep, size in conjugacy_classes(m.group, bound):
        if porder(rep) != 2:
            continue
        if m.psl.contains(rep):
            inner.append((rep, size))
        else:
            outer.append((rep, size))
    if len(outer) != 1:
        raise ClassNotFound(
            f"expected one outer involution class, found {len(outer)}")
    rep, size = outer[0]
    if size != q * (q - 1) // 2 or order // size != 2 * (q + 1):
        raise ClassNotFound(
            f"outer class size {size} != q(q-1)/2 = {q * (q - 1) // 2}")
    if len(inner) != 1 or inner[0][1] != order // (2 * (q - 1)):
        raise ClassNotFound("inner involution class does not match 2(q-1) centralizer")
    return rep, size


def _subgroup_orbit(gens, start: frozenset, bound: int) -> list[frozenset]:
    orbit = {start}
    queue = [start]
    while queue:
        S = queue.pop(0)
        for g in gens:
            Sg = frozenset(pconj(x, g) for x in S)
            if Sg not in orbit:
                if len(orbit) >= bound:
                    raise EnumerationBoundExceeded(
                        f"subgroup orbit exceeds bound {bound}")
                orbit.add(Sg)
                queue.append(Sg)
    return sorted(orbit, key=sorted)


def borel_orbits_on_sylow2(m: PglModel,
                           bound: int = DEFAULT_ENUMERATION_BOUND) -> tuple[int, ...]:
    """Borel orbit sizes on Syl_2(PGL2(q)); must be exactly {q, q(q-1)/2}.

    Also checks that every Sylow 2-subgroup P has P n B either a Sylow
    2-subgroup of B or of order 2.
    """
    q = m.q
    P = sylow(m.group, 2, bound)
    sylows = _subgroup_orbit(m.group.generators, frozenset(P.element_set(bound)), bound)
    bset = m.borel.element_set(bound)
    syl2b = p_part(m.borel.order(), 2)
    for S in sylows:
        meet = len(S & bset)
        assert meet in (syl2b, 2), f"|P n B| = {meet}, expected {syl2b} or 2"
    remaining = set(sylows)
    sizes = []
    while remaining:
        seed = min(remaining, key=sorted)
        component = {seed}
        queue = [seed]
        while queue:
            S = queue.pop(0)
            for g in m.borel.generators:
                Sg = frozenset(pconj(x, g) for x in S)
                if Sg not in component:
                    component.add(Sg)
                    queue.append(Sg)
        remaining -= component
        sizes.append(len(component))
    sizes = tuple(sorted(sizes))
    assert sizes == (q, q * (q - 1) // 2), sizes
    return sizes


def check_pgllemma3(m: PglModel,
                    bound: int = DEFAULT_ENUMERATION_BOUND) -> bool:
    """Exhaustive check of the Sylow-embedding lemma clause (3).

    For every A inside {1} u C (C the outer involution class) generating a
    2-group D with D = (D n B)A, some Sylow 2-subgroup Q with Q n B Sylow
    in B contains D.  Exhaustive over all subsets, so only run it at q = 5.
    """
    rep, _ = outer_involution_class(m, bound)
    from .permgrp import conjugacy_class, identity_perm
    C = sorted(conjugacy_class(m.group, rep, bound))
    if len(C) > 12:
        raise EnumerationBoundExceeded(
            f"2^{len(C)} subsets is past exhaustive range; use q = 5")
    ident = identity_perm(m.npoints)
    bset = m.borel.element_set(bound)
    P = sylow(m.group, 2, bound)
    sylows = _subgroup_orbit(m.group.generators, frozenset(P.element_set(bound)), bound)
    syl2b = p_part(m.borel.order(), 2)
    good = [S for S in sylows if len(S & bset) == syl2b]

    from .permgrp import pmul
    for r in range(1, len(C) + 1):
        for combo in itertools.combinations(C, r):
            for A in (set(combo), set(combo) | {ident}):
                D = _generated_set(A, bound)
                if len(D) & (len(D) - 1):
                    continue
                DB = D & bset
                prod = {pmul(b, a) for b in DB for a in A}
                if prod != D:
                    continue
                if not any(D <= Q for Q in good):
                    return False
    return True


def _generated_set(gens, bound: int) -> set:
    from .permgrp import pmul, identity_perm
    gens = list(gens)
    out = {identity_perm(len(gens[0]))} | set(gens)
    queue = list(out)
    while queue:
        x = queue.pop()
        for g in gens:
            y = pmul(x, g)
            if y not in out:
                if len(out) >= bound:
                    raise EnumerationBoundExceeded("generated set exceeds bound")
                out.add(y)
                queue.append(y)
    return out


# ---------------------------------------------------------------------------
# the n_J counting table


_ADMISSIBLE_MSG = "q values must be 9 or a Fermat prime >= 5"


def _check_admissible_q(q: int):
    if q != 9 and not (q >= 5 and is_fermat_prime(q)):
        raise UnsupportedQ(f"q = {q}: {_ADMISSIBLE_MSG}")


@dataclass(frozen=True)
class CountingTable:
    """The n_J and |C_J| values for Gbar = prod PGL2(q_i), J by index subset."""

    qs: tuple[int, ...]
    n_empty: int
    nJ: dict[tuple[int, ...], Fraction]
    cJ: dict[tuple[int, ...], int]

    @property
    def e(self) -> int:
        return len(self.qs)


def _subsets(indices) -> list[tuple[int, ...]]:
    out = []
    for r in range(len(indices) + 1):
        out.extend(itertools.combinations(indices, r))
    return out


def counting_table(qs, n_empty: int, require_integral: bool = True) -> CountingTable:
    """Build the counting table and verify it against the triangular system.

    The closed formula n_J = n_0 2^|J| / prod (q_j - 1) is checked, in exact
    rational arithmetic, to solve n_0 prod (q_j+1) = sum_{L <= J} n_L |C_L|,
    and the proof identity prod (q_j + 1) = sum_L prod_{j in L} q_j is
    verified as well.  With require_integral (the default), any n_J that is
    not a nonnegative integer raises NonIntegralNJ: a genuine envelope always
    has integral counts, so fractional ones signal inconsistent inputs.
    Passing require_integral=False still performs the consistency checks and
    lets the caller inspect the rational values.
    """
    qs = tuple(qs)
    for q in qs:
        _check_admissible_q(q)
    if n_empty < 1 or n_empty & (n_empty - 1):
        raise ValueError(f"n_empty = {n_empty} is not a power of 2")
    idx = tuple(range(len(qs)))
    cJ = {}
    nJ = {}
    for J in _subsets(idx):
        cJ[J] = math.prod(qs[j] * (qs[j] - 1) // 2 for j in J)
        nJ[J] = Fraction(n_empty * 2 ** len(J),
                         math.prod(qs[j] - 1 for j in J))
    # independent solve of the triangular system, smallest subsets first
    solved: dict[tuple[int, ...], Fraction] = {}
    for J in sorted(_subsets(idx), key=len):
        rhs = Fraction(n_empty * math.prod(qs[j] + 1 for j in J))
        acc = sum((solved[L] * cJ[L]
                   for L in _subsets(J) if L != J), Fraction(0))
        solved[J] = (rhs - acc) / cJ[J]
        if solved[J] != nJ[J]:
            raise NonIntegralNJ(
                f"closed formula and triangular solve disagree at J = {J}")
    for J in _subsets(idx):
        if math.prod(qs[j] + 1 for j in J) != sum(
                math.prod(qs[j] for j in L) for L in _subsets(J)):
            raise NonIntegralNJ(f"product identity fails at J = {J}")
        if require_integral and (nJ[J].denominator != 1 or nJ[J] < 0):
            raise NonIntegralNJ(f"n_J = {nJ[J]} at J = {J} is not a nonnegative integer")
    return CountingTable(qs=qs, n_empty=n_empty, nJ=nJ, cJ=cJ)


def sylow_lambda_count(table: CountingTable) -> int:
    """|P n K| = |P+ n Lambda| = 2^e n_0 for a Sylow 2-subgroup P.

    Cross-checked against the expansion sum_J n_J prod (q_j - 1)/2.
    """
    count = 2 ** table.e * table.n_empty
    total = sum(table.nJ[J] * math.prod((table.qs[j] - 1) // 2 for j in J)
                for J in table.nJ)
    assert total == count, (total, count)
    return count


def loop_order_formula(a: int, qs) -> tuple[int, int]:
    """(|X|, |X|_2) = (2^a prod (q_i + 1), 2^(a+e)) for admissible q_i."""
    if a < 0:
        raise ValueError("a must be nonnegative")
    qs = tuple(qs)
    for q in qs:
        _check_admissible_q(q)
    order = 2 ** a * math.prod(q + 1 for q in qs)
    return order, 2 ** (a + len(qs))
