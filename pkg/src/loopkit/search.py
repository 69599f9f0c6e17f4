"""Search oracles: exhaustive small-loop enumeration, the odd square-root
construction, and transversal search over involution class unions.

The Latin-square search is the independent brute-force oracle for the rest
of the toolkit: row-by-row backtracking over normalized tables (row 0 and
column 0 fixed to the identity), with Bol/AIP violations pruned at each
completed row.  Branching is deterministic (cells row-major, candidate
values ascending), so result order is reproducible.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

from .errors import (
    EvenOrder,
    NodeBudgetExceeded,
    NotATransversal,
    NotContained,
    OrderBoundExceeded,
)
from .folder import LoopFolder, is_bruck_folder, loop_from_folder
from .loopcore import (
    Loop,
    check_aip,
    check_bol,
    check_bruck,
    is_associative,
    loops_isomorphic,
)
from .permgrp import (
    DEFAULT_ENUMERATION_BOUND,
    PermGroup,
    conjugacy_class,
    conjugacy_classes,
    identity_perm,
    pmuls,
    porder,
    ppow,
)

MAX_CONSTRAINED_ORDER = 8
MAX_FREE_ORDER = 6
MAX_TRANSVERSAL_INDEX = 64


@dataclass(frozen=True)
class SearchSpec:
    order: int
    require_bol: bool = False
    require_aip: bool = False
    require_exponent2: bool = False
    up_to_isomorphism: bool = False
    node_budget: int = 1_000_000


def _partial_bol_ok(t, n) -> bool:
    """False only when some fully-determined Bol triple fails."""
    for x in range(n):
        tx = t[x]
        for y in range(n):
            a = tx[y]
            if a < 0:
                continue
            ty = t[y]
            ta = t[a]
            for z in range(n):
                b = ta[z]
                if b < 0:
                    continue
                lhs = t[b][y]
                if lhs < 0:
                    continue
                d = ty[z]
                if d < 0:
                    continue
                e = t[d][y]
                if e < 0:
                    continue
                rhs = tx[e]
                if rhs >= 0 and rhs != lhs:
                    return False
    return True


def _partial_aip_ok(t, n) -> bool:
    """False when inverses already fail to be two-sided or AIP fails."""
    inv = [-1] * n
    for x in range(n):
        for j in range(n):
            if t[x][j] == 0:
                back = t[j][x]
                if back not in (-1, 0):
                    return False
                if back == 0:
                    inv[x] = j
                break
    for x in range(n):
        ix = inv[x]
        if ix < 0:
            continue
        for y in range(n):
            iy = inv[y]
            if iy < 0:
                continue
            p = t[x][y]
            if p < 0:
                continue
            q = t[ix][iy]
            if q >= 0 and inv[p] >= 0 and inv[p] != q:
                return False
    return True


def enumerate_loops(spec: SearchSpec) -> list[Loop]:
    """All normalized loop tables of the given order meeting the constraints."""
    n = spec.order
    constrained = spec.require_bol or spec.require_aip or spec.require_exponent2
    limit = MAX_CONSTRAINED_ORDER if constrained else MAX_FREE_ORDER
    if n < 1 or n > limit:
        raise OrderBoundExceeded(
            f"order {n} outside search range (<= {MAX_FREE_ORDER} free, "
            f"<= {MAX_CONSTRAINED_ORDER} with identity constraints)")
    if n == 1:
        return [Loop([[0]])]

    table = [[-1] * n for _ in range(n)]
    table[0] = list(range(n))
    for i in range(n):
        table[i][0] = i
    if spec.require_exponent2:
        for i in range(n):
            if table[i][i] not in (-1, 0):
                return []
            table[i][i] = 0
    row_used = [set(v for v in row if v >= 0) for row in table]
    col_used = [set(table[i][j] for i in range(n) if table[i][j] >= 0)
                for j in range(n)]
    for i in range(n):
        if len(row_used[i]) != sum(1 for v in table[i] if v >= 0):
            return []  # duplicate forced entries, e.g. exp2 at odd spots
    cells = [(r, c) for r in range(1, n) for c in range(1, n)
             if table[r][c] < 0]
    row_end = {}
    for r, c in cells:
        row_end[r] = (r, c)
    ends = set(row_end.values())

    results: list[Loop] = []
    nodes = 0

    def place(idx: int):
        nonlocal nodes
        if idx == len(cells):
            loop = Loop([row[:] for row in table])
            if spec.require_bol and not check_bol(loop):
                return
            if spec.require_aip and not check_bruck_aip(loop):
                return
            if spec.up_to_isomorphism:
                if any(loops_isomorphic(loop, kept) for kept in results):
                    return
            results.append(loop)
            return
        r, c = cells[idx]
        at_row_end = (r, c) in ends
        for v in range(n):
            if v in row_used[r] or v in col_used[c]:
                continue
            nodes += 1
            if nodes > spec.node_budget:
                raise NodeBudgetExceeded(
                    f"search expanded more than {spec.node_budget} nodes")
            table[r][c] = v
            row_used[r].add(v)
            col_used[c].add(v)
            ok = True
            if at_row_end:
                if spec.require_bol and not _partial_bol_ok(table, n):
                    ok = False
                if ok and spec.require_aip and not _partial_aip_ok(table, n):
                    ok = False
            if ok:
                place(idx + 1)
            table[r][c] = -1
            row_used[r].discard(v)
            col_used[c].discard(v)

    def check_bruck_aip(loop: Loop) -> bool:
        from .errors import NoTwoSidedInverse
        try:
            return check_aip(loop)
        except NoTwoSidedInverse:
            return False

    place(0)
    return results


# ---------------------------------------------------------------------------
# the odd square-root construction


def glauberman_loop(G: PermGroup,
                    bound: int = DEFAULT_ENUMERATION_BOUND) -> Loop:
    """The Bruck loop on an odd-order group: x*y = (y x^2 y)^(1/2).

    Odd order makes squaring a bijection on every cyclic subgroup, so the
    square root is the power (m+1)/2 with m the element order.  The mirror
    orientation (y x^2 y rather than x y^2 x) is what satisfies the *right*
    Bol identity; the result is verified to be a Bruck loop before return.
    """
    if G.order() % 2 == 0:
        raise EvenOrder(f"group order {G.order()} is even")
    ident = identity_perm(G.degree)
    elems = [ident] + sorted(e for e in G.elements(bound) if e != ident)
    pos = {e: i for i, e in enumerate(elems)}

    def sqrt(z):
        return ppow(z, (porder(z) + 1) // 2)

    table = [[pos[sqrt(pmuls(y, x, x, y))] for y in elems] for x in elems]
    loop = Loop(table)
    assert check_bruck(loop), "square-root construction must yield a Bruck loop"
    return loop


# ---------------------------------------------------------------------------
# transversal search: unions of involution classes


def envelope_search(G: PermGroup, H: PermGroup,
                    bound: int = DEFAULT_ENUMERATION_BOUND) -> list[LoopFolder]:
    """Folders (G, H, K) with K = {1} u (union of involution classes).

    Emits each K of the right size that is a transversal to every conjugate
    of H and generates G; every hit is verified to carry a Bruck loop of
    exponent 2 (the group-theoretic corollary's conclusion) before being
    returned.
    """
    if not G.contains_subgroup(H):
        raise NotContained("H is not a subgroup of G")
    index = G.order() // H.order()
    if index > MAX_TRANSVERSAL_INDEX:
        raise OrderBoundExceeded(
            f"|G:H| = {index} exceeds the transversal search bound "
            f"{MAX_TRANSVERSAL_INDEX}")
    invol = [(rep, size) for rep, size in conjugacy_classes(G, bound)
             if porder(rep) == 2]
    class_elems = [sorted(conjugacy_class(G, rep, bound)) for rep, _ in invol]
    ident = identity_perm(G.degree)
    hits: list[LoopFolder] = []
    for mask in range(1 << len(invol)):
        chosen = [i for i in range(len(invol)) if mask >> i & 1]
        if 1 + sum(invol[i][1] for i in chosen) != index:
            continue
        K = (ident,) + tuple(itertools.chain.from_iterable(
            class_elems[i] for i in chosen))
        try:
            f = LoopFolder(G, H, K)
        except NotATransversal:
            continue
        if not f.is_transversal_to_all_conjugates():
            continue
        if not f.is_envelope():
            continue
        loop = loop_from_folder(f)
        assert check_bol(loop), "corollary violated: loop not Bol"
        assert check_aip(loop), "corollary violated: loop not AIP"
        assert all(loop.table[x][x] == 0 for x in range(loop.n)), \
            "corollary violated: loop not of exponent 2"
        assert is_bruck_folder(f), "corollary violated: H does not act on K"
        hits.append(f)
    return hits


# ---------------------------------------------------------------------------
# regression fixtures


@dataclass(frozen=True)
class SearchReport:
    """Frozen record of an oracle run, written as a versioned JSON fixture."""

    version: int
    spec: SearchSpec
    count: int
    associative_count: int
    tables: tuple[tuple[tuple[int, ...], ...], ...]
    bol_flags: tuple[bool, ...]
    aip_flags: tuple[bool, ...] = field(default=())

    def to_json(self) -> str:
        return json.dumps({
            "version": self.version,
            "spec": {
                "order": self.spec.order,
                "require_bol": self.spec.require_bol,
                "require_aip": self.spec.require_aip,
                "require_exponent2": self.spec.require_exponent2,
                "up_to_isomorphism": self.spec.up_to_isomorphism,
            },
            "count": self.count,
            "associative_count": self.associative_count,
            "tables": [[list(row) for row in t] for t in self.tables],
            "bol_flags": list(self.bol_flags),
            "aip_flags": list(self.aip_flags),
        }, indent=1)

    @staticmethod
    def from_json(text: str) -> "SearchReport":
        data = json.loads(text)
        spec = SearchSpec(
            order=data["spec"]["order"],
            require_bol=data["spec"]["require_bol"],
            require_aip=data["spec"]["require_aip"],
            require_exponent2=data["spec"]["require_exponent2"],
            up_to_isomorphism=data["spec"]["up_to_isomorphism"],
        )
        return SearchReport(
            version=data["version"],
            spec=spec,
            count=data["count"],
            associative_count=data["associative_count"],
            tables=tuple(tuple(tuple(row) for row in t) for t in data["tables"]),
            bol_flags=tuple(data["bol_flags"]),
            aip_flags=tuple(data["aip_flags"]),
        )


def bol_from_search_report(spec: SearchSpec, path=None) -> SearchReport:
    """Run the oracle and freeze counts, representatives and identity flags."""
    loops = enumerate_loops(spec)
    from .errors import NoTwoSidedInverse

    def aip_flag(lp):
        try:
            return check_aip(lp)
        except NoTwoSidedInverse:
            return False

    report = SearchReport(
        version=1,
        spec=spec,
        count=len(loops),
        associative_count=sum(1 for lp in loops if is_associative(lp)),
        tables=tuple(lp.table for lp in loops),
        bol_flags=tuple(check_bol(lp) for lp in loops),
        aip_flags=tuple(aip_flag(lp) for lp in loops),
    )
    if path is not None:
        with open(path, "w") as fh:
            fh.write(report.to_json() + "\n")
    return report
