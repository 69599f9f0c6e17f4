"""Loop folders: triples (G, H, K) and the Baer correspondence.

A folder has a permutation group G, a subgroup H and an element list K
with K[0] = 1 such that K is a transversal to the conjugates of H; the
loop lives on K via x*y = the K-representative of the coset H*x*y. The
Baer envelope of a loop is the canonical folder built from its right
translations; `loop_from_folder(baer_envelope(X))` reproduces X entrywise
because both sides index loop elements by K-position.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    AutomorphismUnrealizable,
    InvalidLoopTable,
    NoFactorization,
    NotATransversal,
    NotBruck,
    NotContained,
    NotFaithful,
)
from .loopcore import Loop
from .permgrp import (
    DEFAULT_ENUMERATION_BOUND,
    Perm,
    PermGroup,
    conjugacy_class,
    core,
    coset_action,
    identity_perm,
    is_identity,
    o2,
    pconj,
    pinv,
    pmul,
    pointwise_stabilizer,
    porder,
)


@dataclass(frozen=True, eq=False)
class LoopFolder:
    """A loop folder (G, H, K); K transversal to H is checked eagerly.

    The stronger axiom (transversal to every conjugate of H) and the
    faithful/envelope flags are computed on demand: they are only needed by
    a few callers and cost a chain per conjugate.
    """

    G: PermGroup
    H: PermGroup
    K: tuple[Perm, ...]

    def __post_init__(self):
        K = tuple(tuple(k) for k in self.K)
        object.__setattr__(self, "K", K)
        if not K or not is_identity(K[0]):
            raise NotATransversal("K[0] must be the identity")
        if not self.G.contains_subgroup(self.H):
            raise NotContained("H is not a subgroup of G")
        for k in K:
            if not self.G.contains(k):
                raise NotContained("K contains an element outside G")
        index = self.G.order() // self.H.order()
        if len(K) != index:
            raise NotATransversal(
                f"|K| = {len(K)} but |G:H| = {index}")
        labels = set()
        for k in K:
            lab = self.H.coset_canon(k)
            if lab in labels:
                raise NotATransversal(
                    "two K-elements lie in the same H-coset", witness=k)
            labels.add(lab)

    @property
    def degree(self) -> int:
        return self.G.degree

    def order(self) -> int:
        return len(self.K)

    def is_faithful(self) -> bool:
        """Condition (2): H is core free in G."""
        return core(self.G, self.H).order() == 1

    def is_envelope(self) -> bool:
        """Condition (3): G = <K>."""
        return PermGroup(self.degree, self.K).order() == self.G.order()

    def is_transversal_to_all_conjugates(self) -> bool:
        """Folder axiom (1) in full.

        Once K is a transversal to H itself, G = HK, so the conjugates of H
        are exactly the H^k for k in K.
        """
        for k in self.K:
            Hk = PermGroup(self.degree, [pconj(h, k) for h in self.H.generators])
            labels = {Hk.coset_canon(x) for x in self.K}
            if len(labels) != len(self.K):
                return False
        return True


def baer_envelope(loop: Loop) -> LoopFolder:
    """The Baer envelope: G = <rho_x>, H = Stab_G(0), K = (rho_x)_x."""
    K = tuple(loop.right_translation(x) for x in range(loop.n))
    G = PermGroup(loop.n, K, base_hint=(0,))
    H = pointwise_stabilizer(G, (0,))
    return LoopFolder(G, H, K)


def loop_from_folder(f: LoopFolder) -> Loop:
    """The loop on K: i*j is the K-position z with H K[i] K[j] = H K[z]."""
    position = {}
    for z, k in enumerate(f.K):
        lab = f.H.coset_canon(k)
        if lab in position:
            raise NotATransversal(
                "two K-elements share a coset", witness=k)
        position[lab] = z
    n = len(f.K)
    table = []
    for i in range(n):
        row = []
        for j in range(n):
            lab = f.H.coset_canon(pmul(f.K[i], f.K[j]))
            z = position.get(lab)
            if z is None:
                raise NotATransversal(
                    f"coset of K[{i}]*K[{j}] misses K",
                    witness=(i, j))
            row.append(z)
        table.append(row)
    try:
        return Loop(table)
    except InvalidLoopTable as exc:
        raise NotATransversal(
            f"K is not a transversal to all conjugates of H: {exc}",
            witness=str(exc))


def is_twisted_subgroup(G: PermGroup, K) -> bool:
    """1 in K, and x^-1 and x*y*x stay in K for x, y in K."""
    kset = {tuple(k) for k in K}
    if identity_perm(G.degree) not in kset:
        return False
    for x in kset:
        if pinv(x) not in kset:
            return False
        for y in kset:
            if pmul(pmul(x, y), x) not in kset:
                return False
    return True


def h_acts_on_k(f: LoopFolder) -> bool:
    kset = set(f.K)
    return all(pconj(k, h) in kset
               for h in f.H.generators for k in f.K)


def is_bruck_folder(f: LoopFolder) -> bool:
    return is_twisted_subgroup(f.G, f.K) and h_acts_on_k(f)


def is_bx2p_folder(f: LoopFolder) -> bool:
    """Bruck folder whose K-elements all have 2-power order."""
    if not is_bruck_folder(f):
        return False
    return all(porder(k) & (porder(k) - 1) == 0 for k in f.K)


# ---------------------------------------------------------------------------
# subfolders


def subfolder_from_subgroup(f: LoopFolder, U: PermGroup,
                            bound: int = DEFAULT_ENUMERATION_BOUND) -> LoopFolder:
    """The subfolder (U, U n H, U n K) when U = (U n H)(U n K).

    Raises NoFactorization, with a witness element of U outside the product
    set, when the factorization fails.
    """
    if not f.G.contains_subgroup(U):
        raise NotContained("U is not a subgroup of G")
    u_elems = U.elements(bound)
    uh = [x for x in u_elems if f.H.contains(x)]
    kset = set(f.K)
    uk = [x for x in u_elems if x in kset]
    UH = PermGroup(f.degree, uh)
    covered = {UH.coset_canon(k) for k in uk}
    index = U.order() // UH.order()
    if len(covered) != index:
        for x in u_elems:
            if UH.coset_canon(x) not in covered:
                raise NoFactorization(
                    "U != (U n H)(U n K)", witness=x)
        raise NoFactorization("U != (U n H)(U n K)")  # pragma: no cover
    ident = identity_perm(f.degree)
    k_list = [ident] + sorted(k for k in uk if not is_identity(k))
    return LoopFolder(U, UH, tuple(k_list))


def k_positions(f: LoopFolder, perms) -> tuple[int, ...]:
    """Positions in f.K of the given permutations (sorted ascending)."""
    pos = {k: i for i, k in enumerate(f.K)}
    return tuple(sorted(pos[tuple(p)] for p in perms))


def subloop_elements(f: LoopFolder, sub: LoopFolder) -> tuple[int, ...]:
    """The parent-loop element set carried by a subfolder."""
    return k_positions(f, sub.K)


# ---------------------------------------------------------------------------
# the tau extension G+ = G<tau>


@dataclass(frozen=True, eq=False)
class TauExtension:
    """G+ = G<tau> realized on two copies of the domain, tau the copy swap."""

    Gplus: PermGroup
    tau: Perm
    Hplus: PermGroup
    Lambda: tuple[Perm, ...] = field(repr=False)


def _tau_images(f: LoopFolder):
    """Generators h of H and k of K with their images under tau (fix / invert)."""
    pairs = [(h, h) for h in f.H.generators]
    pairs += [(k, pinv(k)) for k in f.K if not is_identity(k)]
    return pairs


def _check_tau_automorphism(f: LoopFolder, pairs):
    """The graph subgroup of (g, g^tau) must be a bijection's graph."""
    d = f.degree
    graph_gens = [g + tuple(d + x for x in img) for g, img in pairs]
    graph = PermGroup(2 * d, graph_gens, base_hint=tuple(range(d)))
    if graph.order() != f.G.order():
        raise AutomorphismUnrealizable(
            "fixing H and inverting K does not define an automorphism "
            f"(graph order {graph.order()} != |G| = {f.G.order()})")
    ker = pointwise_stabilizer(graph, range(d))
    if ker.order() != 1:
        raise AutomorphismUnrealizable(
            "the tau map is not single valued on G")


def tau_extension(f: LoopFolder,
                  bound: int = DEFAULT_ENUMERATION_BOUND) -> TauExtension:
    """Realize tau (fixes H pointwise, inverts K) and the set Lambda = tau*K.

    G+ acts on the disjoint union of two copies of the domain: g goes to
    [g on copy 0, g^tau on copy 1] and tau swaps the copies, so conjugation
    by tau implements the automorphism.  Requires a faithful Bruck folder.
    """
    if not is_bruck_folder(f):
        raise NotBruck("tau extension needs a Bruck folder")
    if not f.is_faithful():
        raise NotFaithful("tau extension needs a core-free H")
    pairs = _tau_images(f)
    _check_tau_automorphism(f, pairs)
    d = f.degree
    tau = tuple(list(range(d, 2 * d)) + list(range(d)))
    emb_gens = [g + tuple(d + x for x in img) for g, img in pairs]
    Gplus = PermGroup(2 * d, emb_gens + [tau], base_hint=tuple(range(d)))
    assert Gplus.order() == 2 * f.G.order()
    h_emb = [h + tuple(d + x for x in h) for h in f.H.generators]
    Hplus = PermGroup(2 * d, h_emb + [tau])
    k_emb = {k: k + tuple(d + x for x in pinv(k)) for k in f.K}
    lam = tuple(pmul(tau, k_emb[k]) for k in f.K)
    lam_set = set(lam)
    for x in lam:
        if not is_identity(pmul(x, x)):
            raise AutomorphismUnrealizable(
                "an element of Lambda is not an involution")
        for g in Gplus.generators:
            if pconj(x, g) not in lam_set:
                raise AutomorphismUnrealizable(
                    "Lambda is not invariant under G+ conjugation")
    return TauExtension(Gplus=Gplus, tau=tau, Hplus=Hplus, Lambda=lam)


# ---------------------------------------------------------------------------
# the BX2P lemma checks: k^2 in O2(G), Kbar a class union, no H-inversion


def k_squares_in_o2(f: LoopFolder,
                    bound: int = DEFAULT_ENUMERATION_BOUND) -> bool:
    O2 = o2(f.G, bound)
    return all(O2.contains(pmul(k, k)) for k in f.K)


def kbar_class_union(f: LoopFolder,
                     bound: int = DEFAULT_ENUMERATION_BOUND) -> bool:
    """In Gbar = G/O2(G): 1 in Kbar and Kbar is a union of conjugacy classes."""
    O2 = o2(f.G, bound)
    _, act = coset_action(f.G, O2, bound)
    kbar = {act(k) for k in f.K}
    if identity_perm(len(next(iter(kbar)))) not in kbar:
        return False
    gbar_gens = [act(g) for g in f.G.generators]
    return all(pconj(x, g) in kbar for x in kbar for g in gbar_gens)


def verify_no_h_inversion(f: LoopFolder,
                          bound: int = DEFAULT_ENUMERATION_BOUND) -> bool:
    """No K-element inverts a G-conjugate of an H-element of order > 2."""
    targets = set(f.H.elements(bound))
    queue = list(targets)
    while queue:
        x = queue.pop()
        for g in f.G.generators:
            y = pconj(x, g)
            if y not in targets:
                if len(targets) >= bound:
                    from .errors import EnumerationBoundExceeded
                    raise EnumerationBoundExceeded(
                        f"H-conjugate closure exceeds bound {bound}")
                targets.add(y)
                queue.append(y)
    for x in targets:
        if is_identity(pmul(x, x)):
            continue
        xi = pinv(x)
        for k in f.K:
            if pconj(x, k) == xi:
                return False
    return True


@dataclass(frozen=True)
class NoHInvertReport:
    k_squares_in_o2: bool
    kbar_class_union: bool
    no_h_inversion: bool

    @property
    def ok(self) -> bool:
        return (self.k_squares_in_o2 and self.kbar_class_union
                and self.no_h_inversion)


def no_h_invert_report(f: LoopFolder,
                       bound: int = DEFAULT_ENUMERATION_BOUND) -> NoHInvertReport:
    return NoHInvertReport(
        k_squares_in_o2=k_squares_in_o2(f, bound),
        kbar_class_union=kbar_class_union(f, bound),
        no_h_inversion=verify_no_h_inversion(f, bound),
    )


# ---------------------------------------------------------------------------
# text format


def format_folder_text(f: LoopFolder) -> str:
    """degree; then G, H, K blocks, each a count line plus image rows."""
    lines = [str(f.degree)]
    for block in (f.G.generators, f.H.generators, f.K):
        lines.append(str(len(block)))
        lines.extend(" ".join(map(str, p)) for p in block)
    return "\n".join(lines) + "\n"


def parse_folder_text(text: str) -> LoopFolder:
    tokens = text.split()
    if not tokens:
        raise ValueError("empty folder file")
    degree = int(tokens.pop(0))

    def read_block():
        count = int(tokens.pop(0))
        perms = []
        for _ in range(count):
            if len(tokens) < degree:
                raise ValueError("truncated folder file")
            perms.append(tuple(int(tokens.pop(0)) for _ in range(degree)))
        return perms

    g_gens = read_block()
    h_gens = read_block()
    k = read_block()
    if tokens:
        raise ValueError(f"{len(tokens)} trailing tokens in folder file")
    G = PermGroup(degree, g_gens)
    H = PermGroup(degree, h_gens)
    return LoopFolder(G, H, tuple(k))
