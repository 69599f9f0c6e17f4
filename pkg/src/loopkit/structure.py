"""Structure theorems as executable checks.

decompose splits a Bruck loop into its odd part and 2-power-exponent part
and certifies the direct product; the envelope-side statements (G = O(G) x
O^{2'}(G), the PGL2 shape of G/O2(G), the Sylow-2 subloop construction,
and the Lagrange/Hall audits) are each verified against the loop-side
computations rather than assumed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import (
    DecompositionFailed,
    NotBruck,
    ShapeMismatch,
)
from .folder import (
    LoopFolder,
    baer_envelope,
    is_bx2p_folder,
    loop_from_folder,
    subfolder_from_subgroup,
    subloop_elements,
)
from .loopcore import (
    DEFAULT_ORDER_BOUND,
    Loop,
    check_bruck,
    check_exponent_power_of_2,
    direct_product,
    element_order,
    enumerate_subloops,
    is_normal_subloop,
    is_soluble,
    normal_subloops,
    subloop_as_loop,
    subloop_closure,
)
from .permgrp import (
    DEFAULT_ENUMERATION_BOUND,
    PermGroup,
    centralizer_in,
    coset_action,
    derived_subgroup,
    identity_perm,
    o2,
    o2prime,
    odd_core,
    p_part,
    pconj,
    pmul,
    porder,
    sylow,
    sylow_containing,
)


@dataclass(frozen=True)
class StructureReport:
    """The computed decomposition data of a Bruck loop."""

    odd_part: tuple[int, ...]
    two_part: tuple[int, ...]
    is_direct_product: bool
    envelope_shape: dict
    n_empty: int


# ---------------------------------------------------------------------------
# the odd x 2-power-exponent split


def _split_parts(X: Loop):
    """Element sets of the odd part Y and the 2-part Z, both verified."""
    orders = [element_order(X, x) for x in range(X.n)]
    Y = tuple(x for x in range(X.n) if orders[x] % 2 == 1)
    Z = subloop_closure(X, [x for x in range(X.n)
                            if orders[x] & (orders[x] - 1) == 0])
    if subloop_closure(X, Y) != Y:
        raise DecompositionFailed(
            "odd-order elements do not form a subloop", witness=Y)
    if not is_normal_subloop(X, Y):
        raise DecompositionFailed(
            "the odd part is not a normal subloop", witness=Y)
    return Y, Z


def decompose(X: Loop,
              order_bound: int = DEFAULT_ORDER_BOUND,
              enum_bound: int = DEFAULT_ENUMERATION_BOUND) -> StructureReport:
    """Split X = Y x Z (odd x 2-power exponent) and certify the product.

    Y is the set of odd-order elements, checked to be the largest normal
    subloop of odd order (exhaustively against normal_subloops when the
    order bound permits); Z is the closure of the 2-elements.  The map
    (y, z) -> y*z is verified to be an isomorphism from the direct product
    onto X; any failure raises DecompositionFailed, loudly, since it would
    falsify the direct-product theorem.
    """
    if not check_bruck(X):
        raise NotBruck("decompose needs a Bruck loop")
    Y, Z = _split_parts(X)
    if X.n <= order_bound:
        odd_normals = [N for N in normal_subloops(X, order_bound)
                       if len(N) % 2 == 1]
        largest = max(odd_normals, key=len)
        if set(largest) != set(Y) or any(not set(N) <= set(Y)
                                         for N in odd_normals):
            raise DecompositionFailed(
                "odd-order element set is not the largest odd normal subloop",
                witness=(Y, largest))
    y_loop, y_elems = subloop_as_loop(X, Y)
    z_loop, z_elems = subloop_as_loop(X, Z)
    if not check_exponent_power_of_2(z_loop):
        raise DecompositionFailed(
            "the 2-element closure does not have 2-power exponent", witness=Z)
    if set(Y) & set(Z) != {0} or len(Y) * len(Z) != X.n:
        raise DecompositionFailed(
            "parts do not complement", witness=(Y, Z))
    prod = direct_product(y_loop, z_loop)
    phi = [X.table[y_elems[i]][z_elems[j]]
           for i in range(len(Y)) for j in range(len(Z))]
    if sorted(phi) != list(range(X.n)):
        raise DecompositionFailed("(y, z) -> y*z is not a bijection",
                                  witness=phi)
    for a in range(X.n):
        for b in range(X.n):
            if phi[prod.table[a][b]] != X.table[phi[a]][phi[b]]:
                raise DecompositionFailed(
                    "(y, z) -> y*z is not a homomorphism", witness=(a, b))
    f = baer_envelope(z_loop)
    shape = verify_theorem1c(f, enum_bound)
    return StructureReport(
        odd_part=Y,
        two_part=Z,
        is_direct_product=True,
        envelope_shape=shape,
        n_empty=shape["n_empty"],
    )


def check_envelope_factorization(X: Loop,
                                 bound: int = DEFAULT_ENUMERATION_BOUND) -> bool:
    """G = O(G) x O^{2'}(G) for the enveloping group of X (internal product)."""
    if not check_bruck(X):
        raise NotBruck("envelope factorization is a Bruck-loop statement")
    G = baer_envelope(X).G
    A = odd_core(G, bound)
    B = o2prime(G, bound)
    join = PermGroup(G.degree, A.generators + B.generators)
    if join.order() != A.order() * B.order() or join.order() != G.order():
        return False
    return all(pmul(a, b) == pmul(b, a)
               for a in A.generators for b in B.generators)


# ---------------------------------------------------------------------------
# Theorem 1(c): the shape of G/O2(G)


_ADMISSIBLE_QS = (5, 9, 17, 257, 65537)


def _pgl2_order(q: int) -> int:
    return q * (q - 1) * (q + 1)


def _shape_multisets(order: int, qs=_ADMISSIBLE_QS):
    """All multisets of admissible q with prod |PGL2(q)| = order."""
    out = []

    def rec(remaining, start, acc):
        if remaining == 1:
            out.append(tuple(acc))
            return
        for q in qs[start:]:
            o = _pgl2_order(q)
            if remaining % o == 0:
                acc.append(q)
                rec(remaining // o, qs.index(q), acc)
                acc.pop()

    rec(order, 0, [])
    return out


def verify_theorem1c(f: LoopFolder,
                     bound: int = DEFAULT_ENUMERATION_BOUND) -> dict:
    """Clause-by-clause check of the envelope shape of a BX2P folder.

    Returns {e, qs, o2_order, n_empty, quotient_ok, fstar_ok, kbar_ok};
    raises ShapeMismatch naming the clause that failed.  Evidence is
    order-based: |Gbar| = prod q(q-1)(q+1), derived index 2^e with perfect
    derived group of order prod |PSL2(q)|, and |Hbar| = prod q(q-1) (the
    Borel product); no abstract isomorphism test is attempted.
    """
    if not is_bx2p_folder(f):
        raise NotBruck("theorem 1(c) applies to BX2P folders")
    G = f.G
    O2 = o2(G, bound)
    o2_order = O2.order()
    n_empty = sum(1 for k in f.K if O2.contains(k))
    # (3) F*(G) = O2(G)  <=>  C_G(O2(G)) <= O2(G)
    C = centralizer_in(G, O2.generators, bound)
    fstar_ok = all(O2.contains(c) for c in C.generators)
    if o2_order == G.order():
        return {"e": 0, "qs": (), "o2_order": o2_order, "n_empty": n_empty,
                "quotient_ok": True, "fstar_ok": fstar_ok, "kbar_ok": True}
    Gbar, act = coset_action(G, O2, bound)
    shapes = _shape_multisets(Gbar.order())
    if not shapes:
        raise ShapeMismatch(
            f"|G/O2(G)| = {Gbar.order()} is not a product of admissible "
            f"PGL2(q) orders", clause="c1")
    if len(shapes) > 1:
        raise ShapeMismatch(
            f"ambiguous shape {shapes} for order {Gbar.order()}", clause="c1")
    qs = shapes[0]
    e = len(qs)
    gbar_prime = derived_subgroup(Gbar)
    quotient_ok = (
        Gbar.order() // gbar_prime.order() == 2 ** e
        and gbar_prime.order() == math.prod(_pgl2_order(q) // 2 for q in qs)
        and derived_subgroup(gbar_prime).order() == gbar_prime.order())
    hbar = PermGroup(Gbar.degree, [act(h) for h in f.H.generators])
    quotient_ok = quotient_ok and hbar.order() == math.prod(q * (q - 1) for q in qs)
    if not quotient_ok:
        raise ShapeMismatch("derived/Borel orders do not match the shape",
                            clause="c2")
    # (4) Kbar \ {1} = involutions of Gbar outside Gbar'
    kbar = {act(k) for k in f.K}
    ident = identity_perm(Gbar.degree)
    outer_invol = {x for x in Gbar.elements(bound)
                   if porder(x) == 2 and not gbar_prime.contains(x)}
    kbar_ok = (kbar - {ident}) == outer_invol
    return {"e": e, "qs": qs, "o2_order": o2_order, "n_empty": n_empty,
            "quotient_ok": quotient_ok, "fstar_ok": fstar_ok,
            "kbar_ok": kbar_ok}


# ---------------------------------------------------------------------------
# Theorem 2: Sylow 2-subloops


def sylow2_subloop(X: Loop,
                   bound: int = DEFAULT_ENUMERATION_BOUND) -> tuple[int, ...]:
    """A subloop of order |X|_2, via a good Sylow 2-subgroup of the envelope.

    Splits off the 2-power-exponent part Z, builds its Baer envelope, and
    ascends to a Sylow 2-subgroup Q with Q n O2(G)H Sylow in O2(G)H (the
    goodSylow condition); the subfolder (Q, Q n H, Q n K) then factorizes
    and carries the Sylow subloop.
    """
    if not check_bruck(X):
        raise NotBruck("Sylow subloops are a Bruck-loop statement")
    two_part = p_part(X.n, 2)
    if two_part == 1:
        return (0,)
    _, Z = _split_parts(X)
    z_loop, z_elems = subloop_as_loop(X, Z)
    f = baer_envelope(z_loop)
    G = f.G
    O2 = o2(G, bound)
    O2H = PermGroup(G.degree, O2.generators + f.H.generators)
    P0 = sylow(O2H, 2, bound)
    Q = sylow_containing(G, P0, 2, bound)
    sub = subfolder_from_subgroup(f, Q)
    positions = subloop_elements(f, sub)
    result = tuple(sorted(z_elems[i] for i in positions))
    assert len(result) == two_part, (len(result), two_part)
    return result


def sylow2_all(X: Loop,
               order_bound: int = DEFAULT_ORDER_BOUND) -> list[tuple[int, ...]]:
    """All subloops of order |X|_2, by exhaustive enumeration."""
    target = p_part(X.n, 2)
    return [S for S in enumerate_subloops(X, order_bound) if len(S) == target]


def _h_maps_kset(f: LoopFolder, h, source: frozenset, target: frozenset) -> bool:
    return frozenset(pconj(k, h) for k in source) == target


def sylow2_conjugacy(X: Loop,
                     order_bound: int = DEFAULT_ORDER_BOUND,
                     enum_bound: int = DEFAULT_ENUMERATION_BOUND) -> bool:
    """All subloops of order |X|_2 are conjugate under H (inner maps)."""
    subs = sylow2_all(X, order_bound)
    if len(subs) <= 1:
        return True
    f = baer_envelope(X)
    h_elems = f.H.elements(enum_bound)
    ksets = [frozenset(f.K[i] for i in S) for S in subs]
    first = ksets[0]
    for other in ksets[1:]:
        if not any(_h_maps_kset(f, h, first, other) for h in h_elems):
            return False
    return True


def sylow2_dominates_all(X: Loop,
                         order_bound: int = DEFAULT_ORDER_BOUND,
                         enum_bound: int = DEFAULT_ENUMERATION_BOUND) -> bool:
    """Every 2-power-order subloop lies in an H-conjugate of the Sylow subloop."""
    P = sylow2_subloop(X, enum_bound)
    f = baer_envelope(X)
    pset = frozenset(f.K[i] for i in P)
    h_elems = f.H.elements(enum_bound)
    for S in enumerate_subloops(X, order_bound):
        if len(S) & (len(S) - 1):
            continue
        sset = frozenset(f.K[i] for i in S)
        if not any(sset <= frozenset(pconj(k, h) for k in pset)
                   for h in h_elems):
            return False
    return True


# ---------------------------------------------------------------------------
# Theorems 3-5: Lagrange and Hall


def lagrange_audit(X: Loop, order_bound: int = DEFAULT_ORDER_BOUND) -> bool:
    """Every subloop order divides |X| (exhaustive)."""
    return all(X.n % len(S) == 0 for S in enumerate_subloops(X, order_bound))


def hall_subloops(X: Loop, primes,
                  order_bound: int = DEFAULT_ORDER_BOUND):
    """A subloop of order |X|_pi (a Hall pi-subloop), or None when absent.

    Absence is a meaningful outcome: by Hall's theorem for Bruck loops it
    certifies non-solubility.
    """
    target = math.prod(p_part(X.n, p) for p in set(primes))
    for S in enumerate_subloops(X, order_bound):
        if len(S) == target:
            return S
    return None


def is_soluble_via_envelope(X: Loop,
                            bound: int = DEFAULT_ENUMERATION_BOUND) -> bool:
    """Solubility read off the envelope: G = O(G) x O2(G).

    Coprime normal subgroups intersect trivially and centralize each other,
    so the product is direct exactly when the orders multiply up to |G|.
    """
    if not check_bruck(X):
        raise NotBruck("the solubility characterisation needs a Bruck loop")
    G = baer_envelope(X).G
    return odd_core(G, bound).order() * o2(G, bound).order() == G.order()
