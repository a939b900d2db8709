"""Loop folders (G, H, K), the functors between loops and folders, and normal subfolders."""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import (AmbiguousRepresentative, NotNormal, NotSubfolder, NotSubgroup,
                     NotTransversal)
from .group import (DEFAULT_CAP, FiniteGroup, commutator_subgroup, core_in, enumerate_group,
                    image_set, is_normal_subgroup, is_subgroup, quotient_group, set_product,
                    subgroup_generated, subgroup_table)
from .loop import (CayleyLoop, LoopHom, SubloopSet, direct_product, factor_loop,
                   is_normal_subloop, iter_isomorphisms, loops_isomorphic, right_translation)
from .perm import PermGroupBSGS, point_stabilizer


@dataclass(frozen=True)
class LoopFolder:
    """``(G, H, K)``; ``carrier`` is the subgroup of ``group`` playing G (None: all of it).

    Subfolders share the ambient ``group`` of their parent and differ only in
    ``carrier``, ``H`` and ``K``.
    """
    group: FiniteGroup
    H: frozenset
    K: tuple
    carrier: frozenset | None = None

    def __post_init__(self):
        object.__setattr__(self, "H", frozenset(int(h) for h in self.H))
        object.__setattr__(self, "K", tuple(sorted({int(k) for k in self.K})))
        if self.carrier is not None:
            object.__setattr__(self, "carrier", frozenset(int(g) for g in self.carrier))

    @property
    def G(self) -> frozenset:
        return self.group.all() if self.carrier is None else self.carrier

    @property
    def order(self) -> int:
        return len(self.G)

    def position(self, k: int) -> int:
        return self.K.index(k)

    def to_json(self) -> dict:
        out = {"group": self.group.to_json(), "H": sorted(self.H), "K": list(self.K)}
        if self.carrier is not None:
            out["carrier"] = sorted(self.carrier)
        return out

    @classmethod
    def from_json(cls, data: dict) -> LoopFolder:
        return cls(FiniteGroup.from_json(data["group"]), frozenset(data["H"]), tuple(data["K"]),
                   frozenset(data["carrier"]) if "carrier" in data else None)

    def dumps(self) -> str:
        return json.dumps(self.to_json())


@dataclass(frozen=True)
class FolderMorphism:
    source: LoopFolder
    target: LoopFolder
    map: tuple
    surjective: bool = True

    def kernel(self) -> LoopFolder:
        ker = frozenset(g for g in self.source.G if self.map[g] == 0)
        return LoopFolder(self.source.group, self.source.H & ker,
                          tuple(k for k in self.source.K if k in ker), ker)

    def to_json(self) -> dict:
        return {"map": list(self.map), "surjective": self.surjective}


# -- verification ------------------------------------------------------------

def _arr(S) -> np.ndarray:
    return np.array(sorted(S), dtype=np.intp)


def _right_coset_ids(group: FiniteGroup, S: np.ndarray, elems: np.ndarray) -> np.ndarray:
    """Least element of ``S x`` for each x in ``elems``."""
    return group.mul[S[:, None], elems[None, :]].min(axis=0)


def _conj(group: FiniteGroup, S: np.ndarray, g: int) -> np.ndarray:
    return group.mul[group.mul[group.inv[g], S], g]


def _transversal_scan(group, G, H, K, fast: bool):
    Garr = _arr(G)
    Harr = _arr(H)
    Karr = _arr(K)
    if fast:
        scan = np.unique(_right_coset_ids(group, Harr, Garr))
    else:
        scan = Garr
    for g in scan.tolist():
        Hg = _conj(group, Harr, g)
        ids = _right_coset_ids(group, Hg, Karr)
        if len(np.unique(ids)) != len(Karr):
            vals, counts = np.unique(ids, return_counts=True)
            return g, int(vals[counts > 1][0])
    return None


def verify_folder(group: FiniteGroup, H: Iterable[int], K: Iterable[int],
                  carrier: Iterable[int] | None = None, fast: bool = False) -> LoopFolder:
    """Check that K is a transversal of the right cosets of every conjugate H^g.

    The reference path quantifies over every g; ``fast=True`` only uses one g
    per right coset of H, which suffices because H^(hg) = H^g.
    """
    H = frozenset(H)
    K = frozenset(K)
    G = group.all() if carrier is None else frozenset(carrier)
    if not is_subgroup(group, G):
        raise NotSubgroup("carrier is not a subgroup")
    if not is_subgroup(group, H) or not H <= G:
        raise NotSubgroup("H is not a subgroup of the carrier")
    if 0 not in K or not K <= G:
        raise NotTransversal(0, -1)
    if len(K) * len(H) != len(G):
        raise NotTransversal(0, -1)
    bad = _transversal_scan(group, G, H, K, fast)
    if bad is not None:
        raise NotTransversal(*bad)
    return LoopFolder(group, H, tuple(K), None if carrier is None else G)


def is_folder(group, H, K, carrier=None, fast=True) -> bool:
    try:
        verify_folder(group, H, K, carrier, fast)
    except (NotTransversal, NotSubgroup):
        return False
    return True


# -- the functors ---------------------------------------------------------------

def envelope(X: CayleyLoop, cap: int = DEFAULT_CAP) -> LoopFolder:
    """``ε(X)``: right translations, the group they generate, and the stabilizer of 0.

    Group elements are numbered so that ``R(x)`` has index ``x``.
    """
    K_perms = [right_translation(X, x) for x in range(X.n)]
    chain = PermGroupBSGS(K_perms[1:], X.n)
    G = enumerate_group(chain, cap, first=K_perms[1:])
    H = frozenset(g for g, p in enumerate(G.labels) if p.image[0] == 0)
    stab = point_stabilizer(chain, 0)
    assert chain.order() == stab.order() * X.n, "envelope index differs from loop order"
    assert len(H) == stab.order()
    f = verify_folder(G, H, range(X.n), fast=True)
    assert core_in(G, H) == frozenset({0}), "envelope is not faithful"
    return f


def coset_to_k(f: LoopFolder) -> dict:
    Harr = _arr(f.H)
    ids = _right_coset_ids(f.group, Harr, _arr(f.K))
    out = {}
    for k, c in zip(f.K, ids.tolist()):
        if c in out:
            raise AmbiguousRepresentative(f"coset {c} contains two members of K")
        out[c] = k
    return out


def loop_of_folder(f: LoopFolder) -> CayleyLoop:
    """``l(f)`` on K in sorted order: x∘y is the k in K with k ∈ H(xy)."""
    Harr = _arr(f.H)
    Karr = np.array(f.K, dtype=np.intp)
    rep = coset_to_k(f)
    pos = {k: i for i, k in enumerate(f.K)}
    prods = f.group.mul[Karr[:, None], Karr[None, :]]
    ids = _right_coset_ids(f.group, Harr, prods.ravel()).reshape(prods.shape)
    try:
        table = [[pos[rep[c]] for c in row] for row in ids.tolist()]
    except KeyError as exc:
        raise AmbiguousRepresentative(f"product coset {exc} has no representative in K") from exc
    return CayleyLoop(table)


def is_envelope(f: LoopFolder) -> bool:
    return subgroup_generated(f.group, f.K) == f.G


def is_faithful(f: LoopFolder) -> bool:
    return _core(f) == frozenset({0})


def _core(f: LoopFolder) -> frozenset:
    if f.carrier is None:
        return core_in(f.group, f.H)
    G = standalone(f)
    back = sorted(f.carrier)
    return frozenset(back[x] for x in core_in(G.group, G.H))


def standalone(f: LoopFolder) -> LoopFolder:
    """The folder over its carrier as a group in its own right (elements renumbered by sorting)."""
    if f.carrier is None:
        return f
    G, elems = subgroup_table(f.group, f.carrier)
    idx = {g: i for i, g in enumerate(elems)}
    return LoopFolder(G, frozenset(idx[h] for h in f.H), tuple(idx[k] for k in f.K))


def subloop_of(f: LoopFolder, sub: LoopFolder) -> SubloopSet:
    """``l(sub)`` as a subloop of ``l(f)`` (positions of sub.K inside f.K)."""
    return SubloopSet(loop_of_folder(f), [f.position(k) for k in sub.K])


def subfolder(f: LoopFolder, G_sub: Iterable[int]) -> LoopFolder:
    """The triple ``(G_sub, H ∩ G_sub, K ∩ G_sub)`` over f's ambient group."""
    G_sub = frozenset(G_sub)
    return LoopFolder(f.group, f.H & G_sub, tuple(k for k in f.K if k in G_sub), G_sub)


# -- subfolders -------------------------------------------------------------------

def is_subfolder(f: LoopFolder, sub: LoopFolder) -> bool:
    if sub.group is not f.group and sub.group.digest != f.group.digest:
        raise NotSubfolder("subfolder must share the ambient group")
    if not sub.G <= f.G or not sub.H <= f.H or not set(sub.K) <= set(f.K):
        return False
    return is_folder(f.group, sub.H, sub.K, sub.G)


def nc_violation(f: LoopFolder, sub: LoopFolder, fast: bool = False):
    """First ``(k2, k, g)`` breaking the normality condition, or None.

    The condition: for k2 in K_sub, k in K and g in G, writing k2·k = l·k3 with
    l in H^g and k3 in K, the factor l lies in G_sub.
    """
    group = f.group
    Garr = _arr(f.G)
    Harr = _arr(f.H)
    Karr = np.array(f.K, dtype=np.intp)
    K2 = np.array(sub.K, dtype=np.intp)
    Gsub = np.zeros(group.m, dtype=bool)
    Gsub[list(sub.G)] = True
    scan = np.unique(_right_coset_ids(group, Harr, Garr)) if fast else Garr
    prods = group.mul[K2[:, None], Karr[None, :]]             # k2·k
    for g in scan.tolist():
        Hg = _conj(group, Harr, g)
        k_ids = _right_coset_ids(group, Hg, Karr)
        lookup = dict(zip(k_ids.tolist(), Karr.tolist()))
        p_ids = _right_coset_ids(group, Hg, prods.ravel())
        k3 = np.array([lookup[c] for c in p_ids.tolist()], dtype=np.intp)
        l = group.mul[prods.ravel(), group.inv[k3]]
        bad = np.nonzero(~Gsub[l])[0]
        if len(bad):
            i, j = divmod(int(bad[0]), len(Karr))
            return int(K2[i]), int(Karr[j]), g
    return None


def is_normal_subfolder(f: LoopFolder, sub: LoopFolder, fast: bool = False) -> bool:
    """Subfolder whose group is normal in G and which satisfies the normality condition."""
    if not is_subfolder(f, sub):
        raise NotSubfolder("not a subfolder")
    if f.carrier is None:
        if not is_normal_subgroup(f.group, sub.G):
            return False
    else:
        g = _arr(f.G)
        s = _arr(sub.G)
        conj = f.group.mul[f.group.mul[f.group.inv[g][:, None], s[None, :]], g[:, None]]
        if not np.isin(conj, s).all():
            return False
    return nc_violation(f, sub, fast) is None


def trivial_subfolder(f: LoopFolder) -> LoopFolder:
    return LoopFolder(f.group, frozenset({0}), (0,), frozenset({0}))


def whole_subfolder(f: LoopFolder) -> LoopFolder:
    return LoopFolder(f.group, f.H, f.K, f.G)


def folder_quotient(f: LoopFolder, sub: LoopFolder) -> tuple[LoopFolder, FolderMorphism]:
    """``f/sub`` over ``G/G_sub`` with the natural morphism."""
    if f.carrier is not None:
        raise NotSubfolder("quotients are taken of standalone folders")
    if not is_normal_subfolder(f, sub, fast=True):
        raise NotNormal("quotient requires a normal subfolder")
    Q, proj = quotient_group(f.group, sub.G)
    q = verify_folder(Q, image_set(proj, f.H), image_set(proj, f.K), fast=True)
    return q, FolderMorphism(f, q, tuple(proj.tolist()))


def image_subfolder(phi: FolderMorphism, sub: LoopFolder) -> LoopFolder:
    proj = np.asarray(phi.map)
    return LoopFolder(phi.target.group, image_set(proj, sub.H), tuple(image_set(proj, sub.K)),
                      image_set(proj, sub.G))


def quotient_commutes(f: LoopFolder, sub: LoopFolder) -> LoopHom | None:
    """Isomorphism ``l(f/sub) -> l(f)/l(sub)`` if one exists."""
    q, _ = folder_quotient(f, sub)
    X = loop_of_folder(f)
    Y = subloop_of(f, sub)
    XY, _ = factor_loop(X, Y)
    return loops_isomorphic(loop_of_folder(q), XY)


# -- folder isomorphism ---------------------------------------------------------------

def folders_isomorphic(f1: LoopFolder, f2: LoopFolder) -> tuple | None:
    """A group isomorphism carrying H1 to H2 and K1 to K2, for envelopes; None if none exists.

    Any such map restricts to a loop isomorphism on K, so every loop
    isomorphism is tried and extended along K-words.
    """
    f1, f2 = standalone(f1), standalone(f2)
    if f1.group.m != f2.group.m or len(f1.H) != len(f2.H) or len(f1.K) != len(f2.K):
        return None
    if not (is_envelope(f1) and is_envelope(f2)):
        raise ValueError("folder isomorphism is implemented for envelopes only")
    X1, X2 = loop_of_folder(f1), loop_of_folder(f2)
    G1, G2 = f1.group, f2.group
    for sigma in iter_isomorphisms(X1, X2):
        phi = [-1] * G1.m
        phi[0] = 0
        for i, k in enumerate(f1.K):
            phi[k] = f2.K[sigma.map[i]]
        ok = True
        queue = deque([0])
        seen = {0}
        while queue and ok:
            g = queue.popleft()
            for k in f1.K:
                gk = int(G1.mul[g, k])
                img = int(G2.mul[phi[g], phi[k]])
                if phi[gk] == -1:
                    phi[gk] = img
                elif phi[gk] != img:
                    ok = False
                    break
                if gk not in seen:
                    seen.add(gk)
                    queue.append(gk)
        if not ok or -1 in phi or len(set(phi)) != G1.m:
            continue
        p = np.asarray(phi)
        if not np.array_equal(p[G1.mul], G2.mul[p[:, None], p[None, :]]):
            continue
        if frozenset(p[list(f1.H)].tolist()) != f2.H:
            continue
        return tuple(phi)
    return None


# -- join and meet -----------------------------------------------------------------

def folder_join(f: LoopFolder, f1: LoopFolder, f2: LoopFolder) -> LoopFolder:
    for s in (f1, f2):
        if not is_normal_subfolder(f, s, fast=True):
            raise NotNormal("join requires normal subfolders")
    G3 = set_product(f.group, f1.G, f2.G)
    j = subfolder(f, G3)
    if not is_normal_subfolder(f, j, fast=True):
        raise NotNormal("join failed to be normal")
    return j


def folder_meet(f: LoopFolder, f1: LoopFolder, f2: LoopFolder) -> LoopFolder:
    for s in (f1, f2):
        if not is_normal_subfolder(f, s, fast=True):
            raise NotNormal("meet requires normal subfolders")
    m = LoopFolder(f.group, f1.H & f2.H, tuple(set(f1.K) & set(f2.K)), f1.G & f2.G)
    if not is_normal_subfolder(f, m, fast=True):
        raise NotNormal("meet failed to be normal")
    return m


@dataclass
class JoinMeetReport:
    join: LoopFolder
    meet: LoopFolder
    parts: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.parts.values())


def join_meet_report(f: LoopFolder, f1: LoopFolder, f2: LoopFolder) -> JoinMeetReport:
    """Evaluate each claim about the join and meet of two normal subfolders."""
    j = folder_join(f, f1, f2)
    m = folder_meet(f, f1, f2)
    rep = JoinMeetReport(j, m)
    subs = {1: f1, 2: f2}
    quots = {i: folder_quotient(f, subs[i]) for i in (1, 2)}

    ok1 = ok2 = ok3 = True
    for i in (1, 2):
        q, pi = quots[i]
        other = image_subfolder(pi, subs[3 - i])
        ok1 &= is_subfolder(q, other) and is_normal_subfolder(q, other, fast=True)
        ok2 &= image_subfolder(pi, j).G == other.G and image_subfolder(pi, j).K == other.K
        lhs, _ = folder_quotient(f, j)
        rhs, _ = folder_quotient(q, other)
        ok3 &= folders_isomorphic(lhs, rhs) is not None
    rep.parts["1_image_normal"] = bool(ok1)
    rep.parts["2_join_normal_and_images_agree"] = bool(ok2)
    rep.parts["3_quotients_isomorphic"] = bool(ok3)
    rep.parts["4_meet_normal"] = True  # folder_meet raised otherwise

    Q, proj = quotient_group(f.group, m.G)
    bar = lambda S: image_set(proj, S)  # noqa: E731
    G1b, G2b, G3b = bar(f1.G), bar(f2.G), bar(j.G)
    direct = (G1b & G2b == frozenset({0})
              and commutator_subgroup(Q, G1b, G2b) == frozenset({0})
              and set_product(Q, G1b, G2b) == G3b)
    H_ok = set_product(Q, bar(f1.H), bar(f2.H)) == bar(j.H) and bar(f1.H) & bar(f2.H) == frozenset({0})
    K_ok = set_product(Q, bar(f1.K), bar(f2.K)) == bar(j.K)
    rep.parts["5_direct_product"] = bool(direct and H_ok and K_ok)

    X = loop_of_folder(f)
    X1, X2, X3, X0 = (subloop_of(f, s) for s in (f1, f2, j, m))
    ok6 = all(is_normal_subloop(X, Y) for Y in (X1, X2))
    if ok6:
        l3 = X3.loop()
        pos3 = {x: i for i, x in enumerate(X3.members)}
        Z0 = [pos3[x] for x in X0.members]
        lhs, _ = factor_loop(l3, Z0)
        parts = []
        for Xi in (X1, X2):
            li = Xi.loop()
            posi = {x: i for i, x in enumerate(Xi.members)}
            parts.append(factor_loop(li, [posi[x] for x in X0.members])[0])
        ok6 = loops_isomorphic(lhs, direct_product(*parts)) is not None
    rep.parts["6_loop_direct_product"] = bool(ok6)
    return rep
