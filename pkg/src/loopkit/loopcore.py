"""Loops as multiplication tables.

A loop of order n is an n x n Latin square over 0..n-1 whose row 0 and
column 0 are the identity permutation, so 0 is the two-sided identity.
Tables with the identity elsewhere are rejected, not relabeled.

Everything in here is a pure function of immutable Loop values; the heavy
identity checks (Bol, associativity, automorphic inverses) are vectorized
with numpy so that orders up to a few hundred stay cheap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    InvalidLoopTable,
    NoTwoSidedInverse,
    NotBol,
    NotNormal,
    OrderBoundExceeded,
)

#: Exhaustive routines (subloop enumeration, normality, solubility,
#: isomorphism) refuse to run above this order unless told otherwise.
DEFAULT_ORDER_BOUND = 96


class Loop:
    """An immutable loop given by its multiplication table.

    ``table[i][j]`` is the product i * j.  Instances hash and compare by
    table, so they can key caches and sets.
    """

    __slots__ = ("n", "table", "_arr", "_bol")

    def __init__(self, table):
        rows = tuple(tuple(int(x) for x in row) for row in table)
        n = len(rows)
        ident = tuple(range(n))
        for i, row in enumerate(rows):
            if len(row) != n:
                raise InvalidLoopTable(f"row {i} has length {len(row)}, expected {n}")
            if sorted(row) != list(ident):
                raise InvalidLoopTable(f"row {i} is not a permutation of 0..{n - 1}")
        for j in range(n):
            col = [rows[i][j] for i in range(n)]
            if sorted(col) != list(ident):
                raise InvalidLoopTable(f"column {j} is not a permutation of 0..{n - 1}")
        if rows[0] != ident:
            raise InvalidLoopTable("row 0 is not the identity (0 must be the identity element)")
        if tuple(rows[i][0] for i in range(n)) != ident:
            raise InvalidLoopTable("column 0 is not the identity (0 must be the identity element)")
        self.n = n
        self.table = rows
        self._arr = None
        self._bol = None

    @property
    def arr(self) -> np.ndarray:
        if self._arr is None:
            self._arr = np.array(self.table, dtype=np.int64)
        return self._arr

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def right_translation(self, x: int) -> tuple[int, ...]:
        """rho_x : w -> w * x, as an image tuple."""
        return tuple(self.table[w][x] for w in range(self.n))

    def left_translation(self, x: int) -> tuple[int, ...]:
        """lambda_x : w -> x * w, as an image tuple."""
        return self.table[x]

    def __eq__(self, other):
        return isinstance(other, Loop) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"Loop(n={self.n})"


# ---------------------------------------------------------------------------
# identities


def check_bol(loop: Loop) -> bool:
    """Right Bol identity ((x*y)*z)*y == x*((y*z)*y), all triples."""
    if loop._bol is not None:
        return loop._bol
    T = loop.arr
    n = loop.n
    xy = T  # xy[x, y] = x*y
    xyz = T[xy, :]  # xyz[x, y, z] = (x*y)*z
    y3 = np.arange(n)[None, :, None]
    lhs = T[xyz, np.broadcast_to(y3, xyz.shape)]
    yzy = T[T, np.arange(n)[:, None]]  # yzy[y, z] = (y*z)*y
    rhs = T[np.arange(n)[:, None, None], yzy[None, :, :]]
    loop._bol = bool((lhs == rhs).all())
    return loop._bol


def two_sided_inverses(loop: Loop) -> tuple[int, ...]:
    """inv[x] with x*inv[x] == inv[x]*x == 0, or NoTwoSidedInverse."""
    n = loop.n
    inv = []
    for x in range(n):
        r = loop.table[x].index(0)
        if loop.table[r][x] != 0:
            raise NoTwoSidedInverse(x)
        inv.append(r)
    return tuple(inv)


def check_aip(loop: Loop) -> bool:
    """Automorphic inverse property (x*y)^-1 == x^-1 * y^-1."""
    inv = np.array(two_sided_inverses(loop))
    T = loop.arr
    return bool((inv[T] == T[inv[:, None], inv[None, :]]).all())


def check_bruck(loop: Loop) -> bool:
    if not check_bol(loop):
        return False
    try:
        return check_aip(loop)
    except NoTwoSidedInverse:
        return False


def is_associative(loop: Loop) -> bool:
    T = loop.arr
    return bool((T[T, :] == T[:, T]).all())


def is_abelian_group(loop: Loop) -> bool:
    return is_associative(loop) and loop.table == tuple(
        tuple(loop.table[j][i] for j in range(loop.n)) for i in range(loop.n))


def is_commutative(loop: Loop) -> bool:
    return bool((loop.arr == loop.arr.T).all())


def element_order(loop: Loop, x: int) -> int:
    """Least m > 0 with x^m == 0; requires the Bol identity."""
    if not check_bol(loop):
        raise NotBol("element orders need well-defined powers (right Bol)")
    p = x
    m = 1
    while p != 0:
        p = loop.table[p][x]
        m += 1
        if m > loop.n + 1:  # cannot happen in a Bol loop
            raise NotBol(f"powers of {x} do not cycle through the identity")
    return m if x != 0 else 1


def exponent(loop: Loop) -> int:
    return math.lcm(*(element_order(loop, x) for x in range(loop.n)))


def check_exponent_power_of_2(loop: Loop) -> bool:
    e = exponent(loop)
    return e & (e - 1) == 0


# ---------------------------------------------------------------------------
# subloops


def subloop_closure(loop: Loop, seed) -> tuple[int, ...]:
    """Smallest subset containing seed and 0 that is closed under the product."""
    elems = {0} | set(seed)
    queue = list(elems)
    members = sorted(elems)
    while queue:
        x = queue.pop()
        for y in list(elems):
            for z in (loop.table[x][y], loop.table[y][x]):
                if z not in elems:
                    elems.add(z)
                    queue.append(z)
    return tuple(sorted(elems))


def enumerate_subloops(loop: Loop,
                       bound: int = DEFAULT_ORDER_BOUND) -> list[tuple[int, ...]]:
    """All subloops, as sorted index tuples ordered by (size, elements).

    Grows closures of single-element extensions of known subloops; every
    subloop is reached because it is the closure of a chain of such
    extensions starting at the trivial subloop.
    """
    if loop.n > bound:
        raise OrderBoundExceeded(f"order {loop.n} exceeds bound {bound}")
    trivial = (0,)
    known = {trivial}
    frontier = [trivial]
    while frontier:
        S = frontier.pop()
        inside = set(S)
        for x in range(loop.n):
            if x in inside:
                continue
            T = subloop_closure(loop, inside | {x})
            if T not in known:
                known.add(T)
                frontier.append(T)
    return sorted(known, key=lambda s: (len(s), s))


def _loop_mult_group(loop: Loop):
    from .permgrp import PermGroup
    gens = [loop.right_translation(x) for x in range(loop.n)]
    gens += [loop.left_translation(x) for x in range(loop.n)]
    return PermGroup(loop.n, gens, base_hint=(0,))


def inner_mapping_orbits(loop: Loop) -> list[tuple[int, ...]]:
    """Orbits on loop elements of the stabilizer of 0 in Mlt(X) = <lambda, rho>."""
    from .permgrp import pointwise_stabilizer
    mlt = _loop_mult_group(loop)
    inn = pointwise_stabilizer(mlt, (0,))
    seen = [False] * loop.n
    orbits = []
    for i in range(loop.n):
        if seen[i]:
            continue
        orb = {i}
        queue = [i]
        while queue:
            a = queue.pop()
            for g in inn.generators:
                b = g[a]
                if b not in orb:
                    orb.add(b)
                    queue.append(b)
        for a in orb:
            seen[a] = True
        orbits.append(tuple(sorted(orb)))
    return orbits


def _coset_blocks(loop: Loop, N) -> list[tuple[int, ...]] | None:
    """The partition {x*N} if it is a genuine block system, else None."""
    nset = set(N)
    size = len(nset)
    blocks = {}
    block_of = [-1] * loop.n
    for x in range(loop.n):
        blk = frozenset(loop.table[x][a] for a in N)
        if len(blk) != size:
            return None
        key = min(blk)
        if key in blocks:
            if blocks[key] != blk:
                return None
        else:
            blocks[key] = blk
    cover = sorted(blocks.values(), key=min)
    assigned = [-1] * loop.n
    for idx, blk in enumerate(cover):
        for a in blk:
            if assigned[a] != -1:
                return None
            assigned[a] = idx
    if -1 in assigned:
        return None
    for x in range(loop.n):
        key = min(frozenset(loop.table[x][a] for a in N))
        block_of[x] = assigned[key]
    # products of two blocks must land in a single block
    m = len(cover)
    qtable = [[-1] * m for _ in range(m)]
    for x in range(loop.n):
        for y in range(loop.n):
            bx, by, bz = block_of[x], block_of[y], block_of[loop.table[x][y]]
            if qtable[bx][by] == -1:
                qtable[bx][by] = bz
            elif qtable[bx][by] != bz:
                return None
    return [tuple(sorted(blk)) for blk in cover]


def is_normal_subloop(loop: Loop, N) -> bool:
    """N is normal: invariant under inner mappings and a congruence block.

    Checks both the inner-mapping-group orbit criterion and the explicit
    block-system one, and additionally that the induced block operation is
    a normalized Latin square.
    """
    N = tuple(sorted(set(N) | {0}))
    if subloop_closure(loop, N) != N:
        return False
    orbits = inner_mapping_orbits(loop)
    nset = set(N)
    for orb in orbits:
        hit = nset.intersection(orb)
        if hit and len(hit) != len(orb):
            return False
    blocks = _coset_blocks(loop, N)
    if blocks is None:
        return False
    try:
        _quotient_from_blocks(loop, blocks)
    except InvalidLoopTable:
        return False
    return True


def normal_subloops(loop: Loop,
                    bound: int = DEFAULT_ORDER_BOUND) -> list[tuple[int, ...]]:
    return [S for S in enumerate_subloops(loop, bound)
            if is_normal_subloop(loop, S)]


def _quotient_from_blocks(loop: Loop, blocks) -> Loop:
    blocks = sorted(blocks, key=min)
    assert min(blocks[0]) == 0
    block_of = [-1] * loop.n
    for idx, blk in enumerate(blocks):
        for a in blk:
            block_of[a] = idx
    m = len(blocks)
    table = [[block_of[loop.table[blk[0]][other[0]]] for other in blocks]
             for blk in blocks]
    for x in range(loop.n):
        for y in range(loop.n):
            if table[block_of[x]][block_of[y]] != block_of[loop.table[x][y]]:
                raise InvalidLoopTable("block products are not well defined")
    return Loop(table)


def quotient_loop(loop: Loop, N) -> Loop:
    """The factor loop X/N; raises NotNormal when N is not normal."""
    N = tuple(sorted(set(N) | {0}))
    if not is_normal_subloop(loop, N):
        raise NotNormal(f"{N} is not a normal subloop")
    blocks = _coset_blocks(loop, N)
    return _quotient_from_blocks(loop, blocks)


def subloop_as_loop(loop: Loop, S) -> tuple[Loop, tuple[int, ...]]:
    """The subloop on S as a Loop of its own, plus the index-to-parent map."""
    elems = tuple(sorted(set(S) | {0}))
    pos = {e: i for i, e in enumerate(elems)}
    try:
        table = [[pos[loop.table[a][b]] for b in elems] for a in elems]
    except KeyError:
        raise InvalidLoopTable(f"{S} is not closed under the loop product")
    return Loop(table), elems


@dataclass(frozen=True)
class LoopHom:
    """A loop homomorphism given by its value table."""
    source: Loop
    target: Loop
    map: tuple[int, ...]

    def is_valid(self) -> bool:
        f = self.map
        if f[0] != 0:
            return False
        s, t = self.source, self.target
        return all(f[s.table[i][j]] == t.table[f[i]][f[j]]
                   for i in range(s.n) for j in range(s.n))


def canonical_quotient_hom(loop: Loop, N) -> LoopHom:
    N = tuple(sorted(set(N) | {0}))
    blocks = _coset_blocks(loop, N)
    q = _quotient_from_blocks(loop, blocks)
    blocks = sorted(blocks, key=min)
    block_of = [-1] * loop.n
    for idx, blk in enumerate(blocks):
        for a in blk:
            block_of[a] = idx
    return LoopHom(loop, q, tuple(block_of))


# ---------------------------------------------------------------------------
# solubility, products, isomorphism


_SOLUBLE_CACHE: dict[tuple, bool] = {}


def is_soluble(loop: Loop, bound: int = DEFAULT_ORDER_BOUND) -> bool:
    """Search for a subnormal series with abelian-group quotients."""
    if loop.n > bound:
        raise OrderBoundExceeded(f"order {loop.n} exceeds bound {bound}")
    cached = _SOLUBLE_CACHE.get(loop.table)
    if cached is not None:
        return cached
    if loop.n == 1:
        result = True
    else:
        result = False
        for N in normal_subloops(loop, bound):
            if len(N) == loop.n:
                continue
            q = quotient_loop(loop, N)
            if not (is_associative(q) and is_commutative(q)):
                continue
            sub, _ = subloop_as_loop(loop, N)
            if is_soluble(sub, bound):
                result = True
                break
    _SOLUBLE_CACHE[loop.table] = result
    return result


def direct_product(a: Loop, b: Loop) -> Loop:
    """Componentwise product on pairs, (i, j) encoded as i * b.n + j."""
    nb = b.n
    table = [[a.table[i1][i2] * nb + b.table[j1][j2]
              for i2 in range(a.n) for j2 in range(nb)]
             for i1 in range(a.n) for j1 in range(nb)]
    return Loop(table)


def _translation_signature(loop: Loop):
    from .permgrp import cycle_type
    sig = {}
    for x in range(loop.n):
        key = (cycle_type(loop.left_translation(x)),
               cycle_type(loop.right_translation(x)))
        sig.setdefault(key, []).append(x)
    return sig


def _generating_sequence(loop: Loop) -> list[int]:
    gens = []
    have = {0}
    while len(have) < loop.n:
        g = min(x for x in range(loop.n) if x not in have)
        gens.append(g)
        have = set(subloop_closure(loop, have | {g}))
    return gens


def _close_partial_iso(a: Loop, b: Loop, gens, images):
    """Propagate a generator assignment through both tables.

    Returns None on contradiction, else the partial map as a dict; products
    of mapped elements are mapped too, so once the generators cover a
    generating set the map is total.
    """
    m = {0: 0}
    for g, im in zip(gens, images):
        if m.get(g, im) != im:
            return None
        m[g] = im
    while True:
        changed = False
        for i in list(m):
            for j in list(m):
                p = a.table[i][j]
                q = b.table[m[i]][m[j]]
                if p in m:
                    if m[p] != q:
                        return None
                else:
                    m[p] = q
                    changed = True
        if not changed:
            break
    if len(set(m.values())) != len(m):
        return None
    return m


def find_isomorphism(a: Loop, b: Loop,
                     bound: int = DEFAULT_ORDER_BOUND):
    """An explicit isomorphism map a -> b, or None.

    Backtracks over images of a greedy generating sequence of `a`, pruning
    by translation cycle types and by closure of the partial map.
    """
    if a.n > bound or b.n > bound:
        raise OrderBoundExceeded(f"order exceeds bound {bound}")
    if a.n != b.n:
        return None
    sig_a = _translation_signature(a)
    sig_b = _translation_signature(b)
    if set(sig_a) != set(sig_b):
        return None
    if any(len(sig_a[k]) != len(sig_b[k]) for k in sig_a):
        return None
    key_of_a = {x: k for k, xs in sig_a.items() for x in xs}
    gens = _generating_sequence(a)
    candidates = [sig_b[key_of_a[g]] for g in gens]

    def backtrack(i, images):
        if i == len(gens):
            m = _close_partial_iso(a, b, gens, images)
            if m is not None and len(m) == a.n:
                return tuple(m[x] for x in range(a.n))
            return None
        for cand in candidates[i]:
            if cand in images:
                continue
            images.append(cand)
            if _close_partial_iso(a, b, gens[:i + 1], images) is not None:
                result = backtrack(i + 1, images)
                if result is not None:
                    return result
            images.pop()
        return None

    return backtrack(0, [])


def loops_isomorphic(a: Loop, b: Loop,
                     bound: int = DEFAULT_ORDER_BOUND) -> bool:
    return find_isomorphism(a, b, bound) is not None


# ---------------------------------------------------------------------------
# text format


def format_loop_text(loop: Loop) -> str:
    lines = [str(loop.n)]
    lines.extend(" ".join(map(str, row)) for row in loop.table)
    return "\n".join(lines) + "\n"


def parse_loop_text(text: str) -> Loop:
    tokens = text.split()
    if not tokens:
        raise InvalidLoopTable("empty loop file")
    n = int(tokens[0])
    if len(tokens) != 1 + n * n:
        raise InvalidLoopTable(
            f"expected {n * n} table entries for order {n}, got {len(tokens) - 1}")
    rows = [[int(t) for t in tokens[1 + i * n: 1 + (i + 1) * n]] for i in range(n)]
    return Loop(rows)
