"""Permutation groups with deterministic stabilizer chains.

Permutations are tuples `p` of length `degree`, `p[i]` being the image of
point `i`.  Products compose left to right: `x^(p*q) == q[p[x]]`, matching
the convention that right translations of a loop multiply as the loop does.

Groups are immutable after construction.  The stabilizer chain is built by
a deterministic (restart-until-stable) Schreier-Sims with base points taken
from an optional hint sequence first, then smallest moved point, so results
are reproducible run to run.
"""

from __future__ import annotations

import math
from functools import reduce

from .errors import (
    DegreeMismatch,
    EnumerationBoundExceeded,
    NotContained,
)

Perm = tuple[int, ...]

#: Gate for routines that must walk all group elements (conjugacy classes,
#: centralizers, normalizer searches).
DEFAULT_ENUMERATION_BOUND = 200_000


# ---------------------------------------------------------------------------
# permutation arithmetic


def identity_perm(degree: int) -> Perm:
    return tuple(range(degree))


def is_identity(p: Perm) -> bool:
    return all(i == j for i, j in enumerate(p))


def pmul(p: Perm, q: Perm) -> Perm:
    """Product p*q (apply p first, then q)."""
    return tuple(q[i] for i in p)


def pmuls(*ps: Perm) -> Perm:
    return reduce(pmul, ps)


def pinv(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def ppow(p: Perm, e: int) -> Perm:
    if e < 0:
        return ppow(pinv(p), -e)
    out = identity_perm(len(p))
    base = p
    while e:
        if e & 1:
            out = pmul(out, base)
        base = pmul(base, base)
        e >>= 1
    return out


def pconj(p: Perm, g: Perm) -> Perm:
    """Conjugate g^-1 * p * g."""
    gi = pinv(g)
    return pmul(pmul(gi, p), g)


def commutator(a: Perm, b: Perm) -> Perm:
    return pmuls(pinv(a), pinv(b), a, b)


def cycle_type(p: Perm) -> tuple[int, ...]:
    """Sorted cycle lengths, fixed points included."""
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        out.append(length)
    return tuple(sorted(out))


def porder(p: Perm) -> int:
    return math.lcm(*cycle_type(p))


def p_part(n: int, p: int) -> int:
    """Largest power of p dividing n."""
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def perm_p_part(g: Perm, p: int) -> Perm:
    """The p-part of g: the power of g whose order is the p-part of |g|."""
    m = porder(g)
    return ppow(g, m // p_part(m, p))


# ---------------------------------------------------------------------------
# stabilizer chain


class _Level:
    __slots__ = ("point", "transversal")

    def __init__(self, point: int):
        self.point = point
        # orbit point -> u with point^u = orbit point
        self.transversal: dict[int, Perm] = {}


class PermGroup:
    """A finite permutation group with a deterministic stabilizer chain."""

    def __init__(self, degree: int, generators, base_hint=()):
        self.degree = degree
        gens = []
        seen = set()
        for g in generators:
            g = tuple(g)
            if len(g) != degree:
                raise DegreeMismatch(
                    f"generator degree {len(g)} != group degree {degree}")
            if sorted(g) != list(range(degree)):
                raise DegreeMismatch(f"not a permutation: {g}")
            if not is_identity(g) and g not in seen:
                seen.add(g)
                gens.append(g)
        self.generators: tuple[Perm, ...] = tuple(gens)
        self._base_hint = tuple(base_hint)
        self._levels: list[_Level] = []
        self.strong_generators: tuple[Perm, ...] = ()
        self._build_chain()
        self.base: tuple[int, ...] = tuple(l.point for l in self._levels)

    @classmethod
    def from_generators(cls, degree: int, generators, base_hint=()) -> "PermGroup":
        return cls(degree, generators, base_hint)

    @classmethod
    def trivial(cls, degree: int) -> "PermGroup":
        return cls(degree, [])

    def __repr__(self):
        return (f"PermGroup(degree={self.degree}, order={self.order()}, "
                f"ngens={len(self.generators)})")

    # -- chain construction

    def _pick_base_point(self, g: Perm, used: set[int]) -> int:
        for b in self._base_hint:
            if b not in used and g[b] != b:
                return b
        return min(i for i in range(self.degree) if g[i] != i and i not in used)

    def _build_chain(self):
        strong = list(self.generators)

        def rebuild_levels(base):
            levels = []
            for i, b in enumerate(base):
                lvl = _Level(b)
                gens_i = [g for g in strong
                          if all(g[x] == x for x in base[:i])]
                lvl.transversal = {b: identity_perm(self.degree)}
                queue = [b]
                while queue:
                    a = queue.pop(0)
                    ua = lvl.transversal[a]
                    for s in gens_i:
                        c = s[a]
                        if c not in lvl.transversal:
                            lvl.transversal[c] = pmul(ua, s)
                            queue.append(c)
                levels.append(lvl)
            return levels

        while True:
            # hinted points that the group moves come first, in hint order,
            # so prefix stabilizers of hinted points can be read off the
            # chain; then extend until every generator moves a base point.
            base = [b for b in self._base_hint
                    if any(g[b] != b for g in strong)]
            used = set(base)
            for g in strong:
                if all(g[b] == b for b in base):
                    base.append(self._pick_base_point(g, used))
                    used.add(base[-1])
            levels = rebuild_levels(base)
            new_gen = None
            for i, lvl in enumerate(levels):
                gens_i = [g for g in strong
                          if all(g[x] == x for x in base[:i])]
                for a in sorted(lvl.transversal):
                    ua = lvl.transversal[a]
                    for s in gens_i:
                        uc = lvl.transversal[s[a]]
                        sg = pmul(pmul(ua, s), pinv(uc))
                        residue = self._sift_levels(levels, i + 1, sg)
                        if residue is not None:
                            new_gen = residue
                            break
                    if new_gen:
                        break
                if new_gen:
                    break
            if new_gen is None:
                self._levels = levels
                self.strong_generators = tuple(strong)
                return
            strong.append(new_gen)

    @staticmethod
    def _sift_levels(levels, start, g):
        """Strip g through levels[start:]; return None if it sifts to 1."""
        for lvl in levels[start:]:
            c = g[lvl.point]
            u = lvl.transversal.get(c)
            if u is None:
                return g
            g = pmul(g, pinv(u))
        return None if is_identity(g) else g

    # -- queries

    def order(self) -> int:
        out = 1
        for lvl in self._levels:
            out *= len(lvl.transversal)
        return out

    def contains(self, p) -> bool:
        p = tuple(p)
        if len(p) != self.degree:
            raise DegreeMismatch(
                f"element degree {len(p)} != group degree {self.degree}")
        return self._sift_levels(self._levels, 0, p) is None

    def contains_subgroup(self, other: "PermGroup") -> bool:
        return all(self.contains(g) for g in other.generators)

    def is_normal_subgroup(self, other: "PermGroup") -> bool:
        if not self.contains_subgroup(other):
            return False
        for g in self.generators:
            for x in other.generators:
                if not other.contains(pconj(x, g)):
                    return False
        return True

    def elements(self, bound: int = DEFAULT_ENUMERATION_BOUND) -> list[Perm]:
        """All elements in a deterministic order (chain transversal product)."""
        n = self.order()
        if n > bound:
            raise EnumerationBoundExceeded(
                f"group order {n} exceeds enumeration bound {bound}")
        elems = [identity_perm(self.degree)]
        for lvl in reversed(self._levels):
            step = []
            for a in sorted(lvl.transversal):
                u = lvl.transversal[a]
                step.extend(pmul(h, u) for h in elems)
            elems = step
        return elems

    def element_set(self, bound: int = DEFAULT_ENUMERATION_BOUND) -> frozenset[Perm]:
        return frozenset(self.elements(bound))

    def coset_canon(self, u: Perm) -> Perm:
        """Canonical representative of the right coset (self)*u.

        Walks the chain, at each level replacing u by t*u for the transversal
        element t whose choice minimizes the image of the base point; the
        result depends only on the coset, so equal outputs mean equal cosets.
        """
        for lvl in self._levels:
            a_star = min(lvl.transversal, key=lambda a: u[a])
            u = pmul(lvl.transversal[a_star], u)
        return u


# ---------------------------------------------------------------------------
# derived subgroups and closures


def normal_closure(G: PermGroup, seed) -> PermGroup:
    """Smallest normal subgroup of G containing the given elements."""
    seed = [tuple(s) for s in seed]
    for s in seed:
        if not G.contains(s):
            raise NotContained("seed element outside the group")
    gens = [s for s in seed if not is_identity(s)]
    grp = PermGroup(G.degree, gens)
    while True:
        new = None
        for s in grp.generators:
            for g in G.generators:
                c = pconj(s, g)
                if not grp.contains(c):
                    new = c
                    break
            if new:
                break
        if new is None:
            return grp
        gens.append(new)
        grp = PermGroup(G.degree, gens)


def derived_subgroup(G: PermGroup) -> PermGroup:
    comms = [commutator(a, b) for a in G.generators for b in G.generators]
    return normal_closure(G, comms)


def pointwise_stabilizer(G: PermGroup, points) -> PermGroup:
    """Subgroup of G fixing every listed point."""
    points = list(points)
    grp = G
    while True:
        moved = [p for p in points
                 if any(g[p] != p for g in grp.generators)]
        if not moved:
            return grp
        grp = PermGroup(grp.degree, grp.generators, base_hint=tuple(moved))
        moved_set = set(moved)
        t = 0
        while t < len(grp.base) and grp.base[t] in moved_set:
            t += 1
        prefix = grp.base[:t]
        gens = [s for s in grp.strong_generators
                if all(s[b] == b for b in prefix)]
        grp = PermGroup(grp.degree, gens, base_hint=grp._base_hint)


def coset_table(G: PermGroup, H: PermGroup,
                bound: int = DEFAULT_ENUMERATION_BOUND):
    """Right cosets of H in G: (representatives, images of G's generators).

    Cosets are indexed 0..m-1 with 0 the coset H itself; representatives are
    found by BFS with right multiplication by G's generators, and the i-th
    image tuple gives the action of G.generators[i] on coset indices.
    """
    if not G.contains_subgroup(H):
        raise NotContained("H is not a subgroup of G")
    m = G.order() // H.order()
    if m > bound:
        raise EnumerationBoundExceeded(
            f"coset count {m} exceeds bound {bound}")
    reps = [identity_perm(G.degree)]
    index = {H.coset_canon(reps[0]): 0}
    i = 0
    while i < len(reps):
        r = reps[i]
        for g in G.generators:
            c = H.coset_canon(pmul(r, g))
            if c not in index:
                index[c] = len(reps)
                reps.append(pmul(r, g))
        i += 1
    if len(reps) != m:
        raise NotContained("coset enumeration did not close; H not a subgroup?")
    images = []
    for g in G.generators:
        images.append(tuple(index[H.coset_canon(pmul(r, g))] for r in reps))
    return reps, images


def coset_action(G: PermGroup, H: PermGroup,
                 bound: int = DEFAULT_ENUMERATION_BOUND):
    """Permutation action of G on right cosets of H.

    Returns (quotient group, act) where act maps an element of G to its
    permutation of the coset indices.
    """
    reps, images = coset_table(G, H, bound)
    index = {H.coset_canon(r): i for i, r in enumerate(reps)}
    m = len(reps)

    def act(x: Perm) -> Perm:
        return tuple(index[H.coset_canon(pmul(r, x))] for r in reps)

    quotient = PermGroup(m, images)
    return quotient, act


def core(G: PermGroup, H: PermGroup,
         bound: int = DEFAULT_ENUMERATION_BOUND) -> PermGroup:
    """Largest normal subgroup of G contained in H (kernel of the coset action)."""
    reps, images = coset_table(G, H, bound)
    m = len(reps)
    d = G.degree
    comb_gens = [g + tuple(d + x for x in img)
                 for g, img in zip(G.generators, images)]
    comb = PermGroup(d + m, comb_gens, base_hint=tuple(range(d, d + m)))
    stab = pointwise_stabilizer(comb, range(d, d + m))
    return PermGroup(d, [p[:d] for p in stab.generators])


def center(G: PermGroup,
           bound: int = DEFAULT_ENUMERATION_BOUND) -> PermGroup:
    gens: list[Perm] = []
    zgrp = PermGroup(G.degree, [])
    for x in G.elements(bound):
        if all(pmul(x, g) == pmul(g, x) for g in G.generators):
            if not zgrp.contains(x):
                gens.append(x)
                zgrp = PermGroup(G.degree, gens)
    return zgrp


def centralizer_in(G: PermGroup, targets,
                   bound: int = DEFAULT_ENUMERATION_BOUND) -> PermGroup:
    """Subgroup of G commuting with every target element (by enumeration)."""
    targets = [tuple(t) for t in targets]
    gens: list[Perm] = []
    cgrp = PermGroup(G.degree, [])
    for x in G.elements(bound):
        if all(pmul(x, t) == pmul(t, x) for t in targets):
            if not cgrp.contains(x):
                gens.append(x)
                cgrp = PermGroup(G.degree, gens)
    return cgrp


# ---------------------------------------------------------------------------
# conjugacy classes


def conjugacy_class(G: PermGroup, x,
                    bound: int = DEFAULT_ENUMERATION_BOUND) -> set[Perm]:
    """The conjugacy class of x in G, as a set of permutations."""
    x = tuple(x)
    orbit = {x}
    queue = [x]
    while queue:
        y = queue.pop()
        for g in G.generators:
            z = pconj(y, g)
            if z not in orbit:
                if len(orbit) >= bound:
                    raise EnumerationBoundExceeded(
                        f"conjugacy class larger than bound {bound}")
                orbit.add(z)
                queue.append(z)
    return orbit


def conjugacy_classes(G: PermGroup,
                      bound: int = DEFAULT_ENUMERATION_BOUND):
    """All conjugacy classes as (representative, size), reps minimal in class.

    Classes are listed with representatives in ascending tuple order, which
    makes the output deterministic.
    """
    remaining = set(G.elements(bound))
    out = []
    while remaining:
        rep = min(remaining)
        cls = conjugacy_class(G, rep, bound)
        remaining -= cls
        out.append((rep, len(cls)))
    return out


# ---------------------------------------------------------------------------
# characteristic subgroups


def _is_p_group_order(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def o2(G: PermGroup, bound: int = DEFAULT_ENUMERATION_BOUND) -> PermGroup:
    """Largest normal 2-subgroup O_2(G).

    Greedy over conjugacy classes of 2-elements: a class joins the running
    subgroup exactly when the joint normal closure is still a 2-group, which
    happens exactly when the class lies in O_2(G).
    """
    return _p_core(G, 2, bound)


def _p_core(G: PermGroup, p: int, bound: int) -> PermGroup:
    acc: list[Perm] = []
    grp = PermGroup(G.degree, [])
    for rep, _size in conjugacy_classes(G, bound):
        if is_identity(rep) or not _is_p_group_order(porder(rep), p):
            continue
        if grp.contains(rep):
            continue
        cand = normal_closure(G, acc + [rep])
        if _is_p_group_order(cand.order(), p):
            acc.append(rep)
            grp = cand
    return grp


def odd_core(G: PermGroup, bound: int = DEFAULT_ENUMERATION_BOUND) -> PermGroup:
    """Largest normal subgroup of odd order O(G)."""
    acc: list[Perm] = []
    grp = PermGroup(G.degree, [])
    for rep, _size in conjugacy_classes(G, bound):
        if is_identity(rep) or porder(rep) % 2 == 0:
            continue
        if grp.contains(rep):
            continue
        cand = normal_closure(G, acc + [rep])
        if cand.order() % 2 == 1:
            acc.append(rep)
            grp = cand
    return grp


def o2prime(G: PermGroup, bound: int = DEFAULT_ENUMERATION_BOUND) -> PermGroup:
    """Smallest normal subgroup with quotient of odd order, O^{2'}(G).

    Equals the normal closure of a Sylow 2-subgroup (it contains every
    2-element, and any normal subgroup with odd quotient does too).
    """
    P = sylow(G, 2, bound)
    if P.order() == 1:
        return PermGroup(G.degree, [])
    return normal_closure(G, P.generators)


def o2residual(G: PermGroup, bound: int = DEFAULT_ENUMERATION_BOUND) -> PermGroup:
    """Smallest normal subgroup with 2-group quotient, O^2(G).

    Generated by all elements of odd order; computed as the normal closure
    of Sylow p-subgroups over the odd primes dividing |G|.
    """
    n = G.order()
    gens: list[Perm] = []
    p = 3
    while p <= n:
        if n % p == 0:
            gens.extend(sylow(G, p, bound).generators)
            while n % p == 0:
                n //= p
        p += 2
    if not gens:
        return PermGroup(G.degree, [])
    return normal_closure(G, gens)


# ---------------------------------------------------------------------------
# Sylow subgroups via normalizer ascent


def normalizer_of_subgroup(G: PermGroup, P: PermGroup,
                           bound: int = DEFAULT_ENUMERATION_BOUND) -> PermGroup:
    """N_G(P) by orbit-stabilizer on the conjugates of P's element set.

    Schreier generators of the setwise stabilizer are sifted before being
    kept, so the generating set stays small even for long orbits.
    """
    pset = P.element_set(bound)
    start = frozenset(pset)
    transversal = {start: identity_perm(G.degree)}
    queue = [start]
    stab_gens: list[Perm] = list(P.generators)
    norm = PermGroup(G.degree, stab_gens)
    while queue:
        S = queue.pop(0)
        uS = transversal[S]
        for g in G.generators:
            Sg = frozenset(pconj(x, g) for x in S)
            if Sg not in transversal:
                if len(transversal) >= bound:
                    raise EnumerationBoundExceeded(
                        f"conjugate-subgroup orbit exceeds bound {bound}")
                transversal[Sg] = pmul(uS, g)
                queue.append(Sg)
            else:
                sg = pmul(pmul(uS, g), pinv(transversal[Sg]))
                if not norm.contains(sg):
                    stab_gens.append(sg)
                    norm = PermGroup(G.degree, stab_gens)
    return norm


def _find_p_element(G: PermGroup, p: int, bound: int) -> Perm:
    for x in G.elements(bound):
        if porder(x) % p == 0:
            return perm_p_part(x, p)
    raise NotContained(f"no {p}-element found")  # pragma: no cover


def sylow(G: PermGroup, p: int,
          bound: int = DEFAULT_ENUMERATION_BOUND) -> PermGroup:
    """A Sylow p-subgroup of G, by normalizer ascent."""
    return sylow_containing(G, PermGroup(G.degree, []), p, bound)


def sylow_containing(G: PermGroup, P0: PermGroup, p: int,
                     bound: int = DEFAULT_ENUMERATION_BOUND) -> PermGroup:
    """A Sylow p-subgroup of G containing the p-subgroup P0.

    Repeatedly picks a p-element of N_G(P) outside P (one exists while P is
    not yet Sylow) and extends P by it; each step at least multiplies |P|
    by p, so the ascent terminates in at most log_p |G|_p rounds.
    """
    if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
        raise ValueError(f"{p} is not prime")
    full = p_part(G.order(), p)
    if not _is_p_group_order(P0.order(), p):
        raise NotContained("P0 is not a p-group")
    if not G.contains_subgroup(P0):
        raise NotContained("P0 is not a subgroup of G")
    P = P0
    if P.order() == full:
        return P
    if P.order() == 1:
        seed = _find_p_element(G, p, bound)
        P = PermGroup(G.degree, [seed])
    while P.order() < full:
        N = normalizer_of_subgroup(G, P, bound)
        pset = P.element_set(bound)
        grew = False
        for y in N.elements(bound):
            yp = perm_p_part(y, p)
            if not is_identity(yp) and yp not in pset:
                P = PermGroup(G.degree, list(P.generators) + [yp])
                grew = True
                break
        if not grew:  # pragma: no cover - impossible for p-subgroups below Sylow
            raise NotContained("normalizer ascent stalled")
    return P


# ---------------------------------------------------------------------------
# text format


def format_group_text(G: PermGroup) -> str:
    """Serialize as: degree line, generator count line, one image row per line."""
    lines = [str(G.degree), str(len(G.generators))]
    lines.extend(" ".join(map(str, g)) for g in G.generators)
    return "\n".join(lines) + "\n"


def parse_group_text(text: str) -> PermGroup:
    tokens = text.split()
    if len(tokens) < 2:
        raise ValueError("group text needs a degree line and a count line")
    degree, count = int(tokens[0]), int(tokens[1])
    need = 2 + degree * count
    if len(tokens) != need:
        raise ValueError(
            f"expected {need} integers for degree {degree} and {count} generators, "
            f"got {len(tokens)}")
    gens = []
    for i in range(count):
        gens.append(tuple(int(t) for t in tokens[2 + i * degree: 2 + (i + 1) * degree]))
    return PermGroup(degree, gens)
