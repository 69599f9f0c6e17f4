"""Ready-made multiplication tables: the standard small groups.

These feed the verification corpus: every loop here is a group, indexed so
that 0 is the identity.  `all_groups_up_to_16()` returns one table per
isomorphism class of groups of order <= 16 (42 of them); the pairwise
non-isomorphism is asserted in the test suite rather than assumed.
"""

from __future__ import annotations

import itertools

from .loopcore import Loop, direct_product
from .permgrp import PermGroup, pmul


def from_elements(elements, mul) -> Loop:
    """Cayley table from an element list (identity first) and a product."""
    pos = {e: i for i, e in enumerate(elements)}
    table = [[pos[mul(a, b)] for b in elements] for a in elements]
    return Loop(table)


def from_perm_group(G: PermGroup) -> Loop:
    """The group as a loop: elements in enumeration order, identity first."""
    elems = sorted(G.elements())
    ident = tuple(range(G.degree))
    elems.remove(ident)
    elems.insert(0, ident)
    return from_elements(elems, pmul)


def cyclic(n: int) -> Loop:
    return Loop([[(i + j) % n for j in range(n)] for i in range(n)])


def elementary_abelian(k: int) -> Loop:
    """(C2)^k on bit strings, XOR as the product."""
    n = 1 << k
    return Loop([[i ^ j for j in range(n)] for i in range(n)])


def abelian(*orders: int) -> Loop:
    out = cyclic(orders[0])
    for m in orders[1:]:
        out = direct_product(out, cyclic(m))
    return out


def symmetric3() -> Loop:
    """Sym(3) on the 6 permutations of three letters."""
    perms = sorted(itertools.permutations(range(3)))
    ident = (0, 1, 2)
    elems = [ident] + [p for p in perms if p != ident]
    return from_elements(elems, pmul)


def metacyclic(m: int, s: int, t: int, r: int) -> Loop:
    """The group <x, y | x^m = 1, y^s = x^t, y^-1 x y = x^r>.

    Elements are normal forms x^a y^b with 0 <= a < m, 0 <= b < s; needs
    r^s = 1 (mod m) and t(r - 1) = 0 (mod m) for consistency.  Covers the
    dihedral, (generalized) quaternion, semidihedral and modular families.
    """
    if pow(r, s, m) != 1 % m or (t * (r - 1)) % m != 0:
        raise ValueError(f"inconsistent metacyclic parameters {(m, s, t, r)}")
    elems = [(a, b) for a in range(m) for b in range(s)]

    def mul(u, v):
        a, b = u
        c, d = v
        a2 = (a + c * pow(r, b, m)) % m
        b2 = b + d
        if b2 >= s:
            b2 -= s
            a2 = (a2 + t) % m
        return (a2, b2)

    return from_elements(elems, mul)


def dihedral(n: int) -> Loop:
    """Dihedral group of order 2n."""
    return metacyclic(n, 2, 0, n - 1)


def quaternion8() -> Loop:
    return metacyclic(4, 2, 2, 3)


def quaternion16() -> Loop:
    return metacyclic(8, 2, 4, 7)


def semidihedral16() -> Loop:
    return metacyclic(8, 2, 0, 3)


def modular16() -> Loop:
    return metacyclic(8, 2, 0, 5)


def c4_semi_c4() -> Loop:
    """C4 : C4, the y-inverted action."""
    return metacyclic(4, 4, 0, 3)


def c4c2_semi_c2() -> Loop:
    """(C4 x C2) : C2 with [a, c] = b central: a^4 = b^2 = c^2 = 1."""
    elems = [(i, j, k) for i in range(4) for j in range(2) for k in range(2)]

    def mul(u, v):
        i1, j1, k1 = u
        i2, j2, k2 = v
        return ((i1 + i2) % 4, (j1 + j2 + k1 * i2) % 2, (k1 + k2) % 2)

    return from_elements(elems, mul)


def pauli16() -> Loop:
    """The central product C4 o D4 (order 16)."""
    d4 = metacyclic(4, 2, 0, 3)
    # pairs (x, d) in C4 x D4 modulo (x, d) ~ (x + 2, d * r^2); r^2 = element (2, 0)
    r2 = 2  # index of x^2 in the metacyclic element order
    d4_elems = [(a, b) for a in range(4) for b in range(2)]
    pos = {e: i for i, e in enumerate(d4_elems)}

    def canon(x, d):
        if x >= 2:
            a, b = d4_elems[d]
            return (x - 2, pos[((a + r2) % 4, b)])
        return (x, d)

    elems = [canon(x, d) for x in range(2) for d in range(8)]

    def mul(u, v):
        x1, d1 = u
        x2, d2 = v
        return canon((x1 + x2) % 4, d4.table[d1][d2])

    return from_elements(elems, mul)


def alternating4() -> Loop:
    G = PermGroup(4, [(1, 0, 3, 2), (1, 2, 0, 3)])
    return from_perm_group(G)


def dicyclic3() -> Loop:
    """Dic3 = Q12, order 12."""
    return metacyclic(6, 2, 3, 5)


def frobenius21_group() -> PermGroup:
    """The nonabelian group of order 21 = C7 : C3, acting on 7 points."""
    a = (1, 2, 3, 4, 5, 6, 0)
    b = tuple((2 * x) % 7 for x in range(7))
    return PermGroup(7, [a, b])


def heisenberg3() -> Loop:
    """Order 27, exponent 3: triples over GF(3) with a cocycle twist."""
    elems = [(a, b, c) for a in range(3) for b in range(3) for c in range(3)]

    def mul(u, v):
        a, b, c = u
        d, e, f = v
        return ((a + d) % 3, (b + e) % 3, (c + f + a * e) % 3)

    return from_elements(elems, mul)


def regular_representation(loop: Loop) -> PermGroup:
    """Right regular permutation group of a group table."""
    return PermGroup(loop.n, [loop.right_translation(x) for x in range(loop.n)],
                     base_hint=(0,))


def bruck_exponent2_8() -> Loop:
    """The nonassociative Bruck loop of exponent 2 and order 8.

    Frozen output of the exhaustive order-8 search (unique up to
    isomorphism); its right multiplication group has order 16.
    """
    return Loop([
        [0, 1, 2, 3, 4, 5, 6, 7],
        [1, 0, 3, 2, 5, 4, 7, 6],
        [2, 3, 0, 1, 6, 7, 4, 5],
        [3, 2, 1, 0, 7, 6, 5, 4],
        [4, 5, 7, 6, 0, 1, 2, 3],
        [5, 4, 6, 7, 1, 0, 3, 2],
        [6, 7, 5, 4, 2, 3, 0, 1],
        [7, 6, 4, 5, 3, 2, 1, 0],
    ])


def all_groups_up_to_16() -> list[tuple[str, Loop]]:
    """One representative per isomorphism class of groups of order <= 16."""
    groups: list[tuple[str, Loop]] = [
        ("C1", cyclic(1)),
        ("C2", cyclic(2)),
        ("C3", cyclic(3)),
        ("C4", cyclic(4)),
        ("C2xC2", elementary_abelian(2)),
        ("C5", cyclic(5)),
        ("C6", cyclic(6)),
        ("S3", symmetric3()),
        ("C7", cyclic(7)),
        ("C8", cyclic(8)),
        ("C4xC2", abelian(4, 2)),
        ("C2^3", elementary_abelian(3)),
        ("D4", dihedral(4)),
        ("Q8", quaternion8()),
        ("C9", cyclic(9)),
        ("C3xC3", abelian(3, 3)),
        ("C10", cyclic(10)),
        ("D5", dihedral(5)),
        ("C11", cyclic(11)),
        ("C12", cyclic(12)),
        ("C6xC2", abelian(6, 2)),
        ("D6", dihedral(6)),
        ("A4", alternating4()),
        ("Dic3", dicyclic3()),
        ("C13", cyclic(13)),
        ("C14", cyclic(14)),
        ("D7", dihedral(7)),
        ("C15", cyclic(15)),
        ("C16", cyclic(16)),
        ("C8xC2", abelian(8, 2)),
        ("C4xC4", abelian(4, 4)),
        ("C4xC2^2", abelian(4, 2, 2)),
        ("C2^4", elementary_abelian(4)),
        ("D8", dihedral(8)),
        ("Q16", quaternion16()),
        ("SD16", semidihedral16()),
        ("M16", modular16()),
        ("C4:C4", c4_semi_c4()),
        ("(C4xC2):C2", c4c2_semi_c2()),
        ("D4xC2", direct_product(dihedral(4), cyclic(2))),
        ("Q8xC2", direct_product(quaternion8(), cyclic(2))),
        ("C4oD4", pauli16()),
    ]
    return groups
