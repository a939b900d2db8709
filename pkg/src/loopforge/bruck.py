"""Bruck loop folders: the inverting automorphism τ, the K-radical, G⁺ = G⟨τ⟩ and Λ = τK.

An involutory automorphism that inverts every member of K is built by
walking the Cayley graph of D = ⟨K⟩: the identity is fixed and an edge
g -> g·k forces τ(g·k) = τ(g)·k⁻¹.  Two walks that reach the same element
with different images are a conflict, and every conflict must collapse in
any quotient of D that admits such an automorphism.  Closing the conflicts
under normal closure therefore produces the smallest such quotient.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import EvenOrder, ExtensionInconsistent, NotInvolutory
from .folder import (LoopFolder, _arr, _right_coset_ids, coset_to_k, envelope, is_folder,
                     is_normal_subfolder, is_subfolder, loop_of_folder, standalone,
                     verify_folder)
from .group import (FiniteGroup, all_subgroups, is_automorphism,
                    is_normal_subgroup, normal_closure, o2_group, quotient_group,
                    subgroup_generated, subgroup_table)
from .loop import CayleyLoop, SubloopSet, all_subloops, element_order, is_two_power


@dataclass(frozen=True)
class TauAut:
    """An automorphism of ``carrier`` given by its image array."""
    carrier: FiniteGroup
    image: tuple

    def __post_init__(self):
        object.__setattr__(self, "image", tuple(int(v) for v in self.image))

    def __call__(self, g: int) -> int:
        return self.image[g]

    def is_automorphism(self) -> bool:
        return is_automorphism(self.carrier, self.image)

    def is_involutory(self) -> bool:
        img = np.asarray(self.image)
        return bool(np.array_equal(img[img], np.arange(len(img))))

    def fixed(self) -> frozenset:
        return frozenset(g for g, v in enumerate(self.image) if g == v)

    def to_json(self) -> dict:
        return {"image": list(self.image), "carrier": self.carrier.digest}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data: dict, carrier: FiniteGroup) -> TauAut:
        if "carrier" in data and data["carrier"] != carrier.digest:
            raise ValueError("automorphism was recorded for a different group")
        return cls(carrier, tuple(data["image"]))


@dataclass(frozen=True)
class ExtendedGroup:
    """G⁺ = G⟨τ⟩: element (g, e) has index g + e·|G|, so G sits at 0..|G|-1."""
    plus: FiniteGroup
    base_order: int
    tau: int
    Lambda: frozenset

    def embed(self, g: int) -> int:
        return g

    def coset(self, g: int) -> int:
        return g + self.base_order


def is_twisted_subgroup(Gr: FiniteGroup, K: Iterable[int]) -> bool:
    """1 ∈ K and x·y⁻¹·x ∈ K for all x, y in K."""
    K = _arr(K)
    if len(K) == 0 or K[0] != 0:
        return False
    inK = np.zeros(Gr.m, dtype=bool)
    inK[K] = True
    prod = Gr.mul[Gr.mul[K[:, None], Gr.inv[K][None, :]], K[:, None]]
    return bool(inK[prod].all())


def k_of_tau(Gr: FiniteGroup, t) -> frozenset:
    """K(t) = elements inverted by t."""
    img = np.asarray(t.image if isinstance(t, TauAut) else t)
    return frozenset(np.nonzero(img == Gr.inv)[0].tolist())


# -- propagation and the radical --------------------------------------------------

def _propagate(D: FiniteGroup, K: list[int]):
    """Walk D from the identity along right multiplication by K (sorted).

    Returns ``(image, conflicts)``; ``conflicts`` lists pairs of images
    reaching the same element, and ``image`` is only meaningful when it is empty.
    """
    image = np.full(D.m, -1, dtype=np.intp)
    image[0] = 0
    K = sorted(K)
    kinv = [int(D.inv[k]) for k in K]
    conflicts = []
    queue = deque([0])
    while queue:
        g = queue.popleft()
        tg = int(image[g])
        row = D.mul[g]
        trow = D.mul[tg]
        for k, ki in zip(K, kinv):
            gk = int(row[k])
            val = int(trow[ki])
            cur = int(image[gk])
            if cur == -1:
                image[gk] = val
                queue.append(gk)
            elif cur != val:
                conflicts.append((cur, val))
    return image, conflicts


def _d_table(f: LoopFolder):
    D = subgroup_generated(f.group, f.K)
    Dg, elems = subgroup_table(f.group, D)
    idx = {g: i for i, g in enumerate(elems)}
    return Dg, elems, [idx[k] for k in f.K]


def tau_construct(f: LoopFolder) -> TauAut | None:
    """The involutory automorphism of D = ⟨K⟩ inverting K, or None if there is none.

    The returned automorphism lives on D as a table group (elements of D in
    sorted order); use :func:`tau_on_group` for the extension to all of G.
    """
    Dg, _, Kd = _d_table(f)
    image, conflicts = _propagate(Dg, Kd)
    if conflicts or (image < 0).any():
        return None
    t = TauAut(Dg, tuple(image.tolist()))
    if not (t.is_automorphism() and t.is_involutory()):
        return None
    return t


def k_radical(f: LoopFolder) -> frozenset:
    """Smallest normal N of D = ⟨K⟩ such that D/N has an involutory automorphism
    inverting the image of K and centralizing the image of H ∩ D.

    Both kinds of witness (two walks disagreeing, or τ(h)·h⁻¹ ≠ 1 for h in
    H ∩ D) lie in every admissible N, so adding their normal closure and
    repeating ends at the smallest one.  Returned as elements of f's ambient group.
    """
    Dg, elems, Kd = _d_table(f)
    pos = {g: i for i, g in enumerate(elems)}
    HD = [pos[h] for h in f.H if h in pos]
    N = frozenset({0})
    while True:
        Q, proj = quotient_group(Dg, N)
        Kq = sorted({int(proj[k]) for k in Kd})
        image, conflicts = _propagate(Q, Kq)
        bad = {int(Q.mul[Q.inv[a], b]) for a, b in conflicts}
        if not bad:
            t = TauAut(Q, tuple(image.tolist()))
            if not (t.is_automorphism() and t.is_involutory()):
                raise AssertionError("consistent propagation must give an involutory automorphism")
            hq = {int(proj[h]) for h in HD}
            bad = {int(Q.mul[image[h], Q.inv[h]]) for h in hq} - {0}
            if not bad:
                return frozenset(elems[d] for d in N)
        closure = normal_closure(Q, bad)
        N = frozenset(d for d in range(Dg.m) if int(proj[d]) in closure)


def h_acts_on_k(f: LoopFolder) -> bool:
    H = _arr(f.H)
    K = np.array(f.K, dtype=np.intp)
    inK = np.zeros(f.group.m, dtype=bool)
    inK[K] = True
    conj = f.group.mul[f.group.mul[f.group.inv[H][:, None], K[None, :]], H[:, None]]
    return bool(inK[conj].all())


def is_bruck_folder(f: LoopFolder) -> bool:
    """K twisted, H acting on K by conjugation, and trivial K-radical on ⟨K⟩."""
    if not is_twisted_subgroup(f.group, f.K):
        return False
    if not h_acts_on_k(f):
        return False
    return k_radical(f) == frozenset({0})


def d_of(f: LoopFolder) -> frozenset:
    """D = ⟨K⟩; for Bruck folders it must be normal in G."""
    D = subgroup_generated(f.group, f.K)
    G = f.G
    g = _arr(G)
    d = _arr(D)
    conj = f.group.mul[f.group.mul[f.group.inv[g][:, None], d[None, :]], g[:, None]]
    normal = bool(np.isin(conj, d).all())
    if not normal and is_bruck_folder(f):
        raise AssertionError("⟨K⟩ is not normal in a Bruck folder")
    return D


# -- extension to G and to G⁺ ----------------------------------------------------------

def tau_on_group(f: LoopFolder, t: TauAut | None = None) -> TauAut:
    """Extend τ from ⟨K⟩ to the standalone group of f by hk ↦ h·k⁻¹."""
    f = standalone(f)
    G = f.group
    if t is None:
        t = tau_construct(f)
        if t is None:
            raise ExtensionInconsistent("⟨K⟩ admits no involutory automorphism inverting K")
    _, elems, _ = _d_table(f)
    idx = {g: i for i, g in enumerate(elems)}
    for h in f.H:
        if h in idx and elems[t.image[idx[h]]] != h:
            raise ExtensionInconsistent(f"τ does not centralize H ∩ ⟨K⟩ at {h}")
    rep = coset_to_k(f)
    cid = _right_coset_ids(G, _arr(f.H), np.arange(G.m))
    image = np.empty(G.m, dtype=np.intp)
    for g in range(G.m):
        k = rep[int(cid[g])]
        h = int(G.mul[g, G.inv[k]])
        image[g] = G.mul[h, G.inv[k]]
    full = TauAut(G, tuple(image.tolist()))
    for d, e in enumerate(elems):
        if full.image[e] != elems[t.image[d]]:
            raise ExtensionInconsistent("extension disagrees with τ on ⟨K⟩")
    if not (full.is_automorphism() and full.is_involutory()):
        raise ExtensionInconsistent("extension of τ is not an involutory automorphism of G")
    return full


def extend_group(f: LoopFolder, tau: TauAut | None = None) -> ExtendedGroup:
    """G⁺ = G⟨τ⟩ and Λ = τK for a standalone Bruck folder."""
    f = standalone(f)
    if tau is None or tau.carrier.m != f.group.m:
        tau = tau_on_group(f, tau)
    G = f.group
    m = G.m
    t = np.asarray(tau.image)
    # (g1, e1)(g2, e2) = (g1 · τ^e1(g2), e1 + e2)
    idx = np.arange(2 * m)
    g, e = idx % m, idx // m
    g2 = np.where(e[:, None] > 0, t[g][None, :], g[None, :])
    prod_g = G.mul[g[:, None], g2]
    mul = prod_g + m * ((e[:, None] + e[None, :]) % 2)
    plus = FiniteGroup(mul, check=2 * m <= 512)
    Lam = frozenset(int(G.inv[k]) + m for k in f.K)
    # Λ is invariant under conjugation by G
    lam = np.array(sorted(Lam), dtype=np.intp)
    gs = np.arange(m)
    conj = plus.mul[plus.mul[plus.inv[gs][:, None], lam[None, :]], gs[:, None]]
    if not np.isin(conj, lam).all():
        raise ExtensionInconsistent("Λ is not invariant under G")
    return ExtendedGroup(plus, m, m, Lam)


def is_bruck_envelope(f: LoopFolder) -> bool:
    return is_bruck_folder(f) and subgroup_generated(f.group, f.K) == f.G


# -- fixed-point subfolders ---------------------------------------------------------

def _conj_set(G: FiniteGroup, S, g: int) -> frozenset:
    return frozenset(int(G.mul[G.mul[G.inv[g], s], g]) for s in S)


def fixed_subfolder(f: LoopFolder, U: Iterable[int]) -> LoopFolder:
    """ξ_U = (N_G(U), N_H(U), C_K(U)) for U ⊆ H, with the accompanying claims checked."""
    f = standalone(f)
    G = f.group
    U = frozenset(U)
    if not U <= f.H:
        raise ValueError("U must be a subset of H")
    GU = frozenset(g for g in range(G.m) if _conj_set(G, U, g) == U)
    HU = f.H & GU
    KU = tuple(k for k in f.K if all(G.mul[u, k] == G.mul[k, u] for u in U))
    NK = frozenset(k for k in f.K if k in GU)
    if NK != frozenset(KU):
        raise AssertionError("N_K(U) differs from C_K(U)")
    sub = verify_folder(G, HU, KU, GU)
    if not is_bruck_folder(sub):
        raise AssertionError("ξ_U is not a Bruck folder")
    return sub


def fixed_points_loop(X: CayleyLoop, U: Iterable[int], f: LoopFolder | None = None) -> SubloopSet:
    """Fix_X(U) for U ⊆ H of the envelope (points fixed by every permutation in U)."""
    f = envelope(X) if f is None else f
    perms = [f.group.labels[u].image for u in U]
    pts = [x for x in range(X.n) if all(p[x] == x for p in perms)]
    return SubloopSet(X, pts)


@dataclass
class CriteriaReport:
    """Independently evaluated conditions that a result claims are equivalent."""
    name: str
    conditions: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)

    @property
    def consistent(self) -> bool:
        vals = set(self.conditions.values())
        return len(vals) <= 1 and all(self.extra.values())

    def to_json(self) -> dict:
        return {"name": self.name, "conditions": self.conditions, "extra": self.extra,
                "consistent": self.consistent}


def fixed_point_report(f: LoopFolder, U: Iterable[int], E: ExtendedGroup | None = None) -> CriteriaReport:
    """Every claim about ξ_U for an envelope f of a Bruck loop."""
    f = standalone(f)
    G = f.group
    U = frozenset(U)
    E = extend_group(f) if E is None else E
    rep = CriteriaReport("fixed_points")
    sub = fixed_subfolder(f, U)
    X = loop_of_folder(f)
    Y = fixed_points_loop(X, U, f)
    from .loop import is_subloop, is_bruck
    rep.extra["is_bruck_subloop"] = is_subloop(X, Y.members) and is_bruck(Y.loop())
    rep.extra["loop_matches"] = tuple(sub.K) == Y.members and loop_of_folder(sub) == Y.loop()
    # ⟨K_U⟩ is transitive on Fix_X(U)
    DU = subgroup_generated(G, sub.K)
    orbit = {G.labels[d].image[0] for d in DU}
    rep.extra["transitive"] = orbit == set(Y.members)
    # Λ_U = N_Λ(U) = C_Λ(U) = τ K_U in G⁺
    P = E.plus
    Ulist = sorted(U)
    NL = frozenset(l for l in E.Lambda if _conj_set(P, U, l) == U)
    CL = frozenset(l for l in E.Lambda if all(P.mul[l, u] == P.mul[u, l] for u in Ulist))
    tKU = frozenset(int(P.mul[E.tau, k]) for k in sub.K)
    rep.extra["lambda_U"] = NL == CL == tKU
    return rep


def no_inverting_lambda(f: LoopFolder, E: ExtendedGroup | None = None) -> bool:
    """No member of Λ inverts an element h of H with h² ≠ 1."""
    f = standalone(f)
    E = extend_group(f) if E is None else E
    P = E.plus
    for h in f.H:
        if P.mul[h, h] == 0:
            continue
        for l in E.Lambda:
            if P.mul[P.mul[l, h], l] == P.inv[h]:
                return False
    return True


def tau_fixed_subfolder(f: LoopFolder, tau: TauAut | None = None) -> LoopFolder:
    """ξ_τ = (C_G(τ), H, C_K(τ)); l(ξ_τ) must have exponent 2."""
    f = standalone(f)
    tau = tau_on_group(f, tau) if tau is None or tau.carrier.m != f.group.m else tau
    G = f.group
    Gt = tau.fixed()
    Kt = tuple(k for k in f.K if tau.image[k] == k)
    sub = verify_folder(G, f.H, Kt, Gt)
    if not is_bruck_folder(sub):
        raise AssertionError("ξ_τ is not a Bruck folder")
    Y = loop_of_folder(sub)
    if not all(Y.table[x, x] == 0 for x in range(Y.n)):
        raise AssertionError("l(ξ_τ) is not of exponent 2")
    # K_τ is G_τ-invariant
    for g in Gt:
        if not _conj_set(G, Kt, g) <= frozenset(Kt):
            raise AssertionError("K_τ is not invariant under G_τ")
    return sub


# -- the 2 / 2' criteria -----------------------------------------------------------------

def _two_power(k: int) -> bool:
    return is_two_power(k)


def two_loop_criteria(f: LoopFolder, E: ExtendedGroup | None = None) -> CriteriaReport:
    """X a 2-loop, G a 2-group, and αβ a 2-element for all α, β in Λ."""
    f = standalone(f)
    E = extend_group(f) if E is None else E
    P = E.plus
    lam = np.array(sorted(E.Lambda), dtype=np.intp)
    orders = np.asarray(P.element_orders)
    prods = P.mul[lam[:, None], lam[None, :]]
    rep = CriteriaReport("two_loop")
    rep.conditions["X_2_loop"] = _two_power(len(f.K))
    rep.conditions["G_2_group"] = _two_power(f.group.m)
    rep.conditions["lambda_products_2_elements"] = all(_two_power(int(o)) for o in np.unique(orders[prods]))
    return rep


def odd_loop_criteria(f: LoopFolder) -> CriteriaReport:
    """X a 2'-loop, |G| odd, and every k in K of odd order."""
    f = standalone(f)
    orders = f.group.element_orders
    rep = CriteriaReport("odd_loop")
    rep.conditions["X_odd"] = len(f.K) % 2 == 1
    rep.conditions["G_odd"] = f.group.m % 2 == 1
    rep.conditions["K_odd_orders"] = all(orders[k] % 2 == 1 for k in f.K)
    return rep


def two_element_criterion(f: LoopFolder, E: ExtendedGroup | None = None) -> CriteriaReport:
    """X a 2-element loop, every k a 2-element, and τ ∈ O₂(G⁺)."""
    f = standalone(f)
    E = extend_group(f) if E is None else E
    X = loop_of_folder(f)
    orders = f.group.element_orders
    rep = CriteriaReport("two_element")
    rep.conditions["X_2_element"] = all(_two_power(element_order(X, x)) for x in range(X.n))
    rep.conditions["K_2_elements"] = all(_two_power(orders[k]) for k in f.K)
    rep.conditions["tau_in_O2"] = E.tau in o2_group(E.plus)
    return rep


def odd_quotient_criteria(f: LoopFolder, Q: Iterable[int], E: ExtendedGroup | None = None) -> CriteriaReport:
    """For Q ≤ G normal in G⁺: |k*| odd for all k, |τ*λ*| odd for all λ, |G*| odd."""
    f = standalone(f)
    E = extend_group(f) if E is None else E
    P = E.plus
    Q = frozenset(Q)
    if not is_normal_subgroup(P, Q):
        raise ValueError("Q must be normal in G⁺")
    Pq, proj = quotient_group(P, Q)
    oq = Pq.element_orders
    tq = int(proj[E.tau])
    rep = CriteriaReport("odd_quotient")
    rep.conditions["k_star_odd"] = all(oq[int(proj[k])] % 2 == 1 for k in f.K)
    rep.conditions["tau_lambda_odd"] = all(oq[int(Pq.mul[tq, proj[l]])] % 2 == 1 for l in E.Lambda)
    rep.conditions["G_star_odd"] = (f.group.m // len(Q)) % 2 == 1
    return rep


# -- Glauberman folders ------------------------------------------------------------------

def _odd_sqrt(G: FiniteGroup, g: int) -> int:
    o = int(G.element_orders[g])
    return _power(G, g, (o + 1) // 2)


def _power(G: FiniteGroup, g: int, e: int) -> int:
    out = 0
    for _ in range(e):
        out = int(G.mul[out, g])
    return out


def glauberman_folder(L: FiniteGroup, t: TauAut | Iterable[int], cross_check: bool = True) -> LoopFolder:
    """μ = (L, C_L(t), K_L(t)) for L of odd order and t an involutory automorphism."""
    if L.m % 2 == 0:
        raise EvenOrder(f"group of even order {L.m}")
    t = t if isinstance(t, TauAut) else TauAut(L, tuple(t))
    if not t.is_automorphism():
        raise NotInvolutory("map is not an automorphism")
    if not t.is_involutory():
        raise NotInvolutory("automorphism does not square to the identity")
    C = t.fixed()
    K = k_of_tau(L, t)
    mu = verify_folder(L, C, K, fast=True)
    if not is_bruck_folder(mu):
        raise AssertionError("Glauberman folder fails the Bruck folder test")
    X = loop_of_folder(mu)
    from .loop import is_bruck
    if X.n != L.m // len(C) or not is_bruck(X):
        raise AssertionError("l(μ) is not a Bruck loop of order |L : C_L(t)|")
    if cross_check and sqrt_model(L, mu.K) != X:
        raise AssertionError("folder loop and square-root model disagree")
    return mu


def sqrt_model(L: FiniteGroup, K: Iterable[int]) -> CayleyLoop:
    """x∘y = (y·x²·y)^(1/2) on K, labelled by the sorted order of K.

    This is the mirror image of the familiar (x·y²·x)^(1/2); the mirror is
    the one that matches right translations and coset representatives.
    """
    K = sorted(K)
    pos = {k: i for i, k in enumerate(K)}
    table = []
    for x in K:
        xx = int(L.mul[x, x])
        row = []
        for y in K:
            row.append(pos[_odd_sqrt(L, int(L.mul[L.mul[y, xx], y]))])
        table.append(row)
    return CayleyLoop(table)


def glauberman_loop(L: FiniteGroup, t) -> CayleyLoop:
    return loop_of_folder(glauberman_folder(L, t))


def commutator_with(G: FiniteGroup, S: Iterable[int], t: TauAut) -> frozenset:
    """[S, t] = ⟨s⁻¹·s^t : s ∈ S⟩."""
    return subgroup_generated(G, [int(G.mul[G.inv[s], t.image[s]]) for s in S])


def glauberman_faithful(L: FiniteGroup, t: TauAut) -> bool:
    """L = [L, t] and C_{Z(L)}(t) = 1."""
    from .group import center
    return (commutator_with(L, range(L.m), t) == L.all()
            and all(t.image[z] != z for z in center(L) if z != 0))


# -- Baer correspondence ----------------------------------------------------------------

@dataclass
class Correspondence:
    """φ: τ-invariant subgroups -> subfolders, ψ: subloops -> subgroups L = [L, τ]."""
    subgroups: list
    subfolders: list
    subloops: list
    phi: list
    psi: list
    checks: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def triples(self) -> list:
        """(subgroup, subfolder, subloop) index triples; subloop -1 when L ≠ [L, τ]."""
        inv_psi = {j: y for y, j in enumerate(self.psi)}
        return [(j, self.phi[j], inv_psi.get(j, -1)) for j in range(len(self.subgroups))]

    def to_json(self) -> dict:
        return {"subgroups": [sorted(s) for s in self.subgroups],
                "subloops": [list(y.members) for y in self.subloops],
                "triples": self.triples(), "checks": self.checks}


def baer_bijection(f: LoopFolder) -> Correspondence:
    """Materialize and check both correspondences for an odd-order Bruck envelope."""
    f = standalone(f)
    G = f.group
    if G.m % 2 == 0:
        raise EvenOrder(f"enveloping group has even order {G.m}")
    tau = tau_on_group(f)
    E = extend_group(f, tau)
    P = E.plus
    X = loop_of_folder(f)
    t = np.asarray(tau.image)
    checks = {}

    # Λ = τ^G, H = C_G(τ), K = K(τ)
    tauG = frozenset(int(P.mul[P.mul[P.inv[g], E.tau], g]) for g in range(G.m))
    checks["lambda_is_class"] = tauG == E.Lambda
    checks["H_is_centralizer"] = tau.fixed() == f.H
    checks["K_is_inverted"] = k_of_tau(G, tau) == frozenset(f.K)

    subs = all_subgroups(G)
    J = [S for S in subs if frozenset(t[list(S)].tolist()) == S]
    folders_all = [S for S in subs if is_folder(G, f.H & S, [k for k in f.K if k in S], S)]
    phi = []
    phi_ok = True
    for S in J:
        CJ = frozenset(s for s in S if t[s] == s)
        KJ = frozenset(s for s in S if t[s] == G.inv[s])
        sub = LoopFolder(G, CJ, tuple(KJ), S)
        phi_ok &= CJ == f.H & S and KJ == frozenset(k for k in f.K if k in S)
        phi_ok &= is_subfolder(f, sub)
        phi.append(folders_all.index(S) if S in folders_all else -1)
    checks["phi_into_subfolders"] = bool(phi_ok) and -1 not in phi
    checks["phi_bijective"] = sorted(phi) == list(range(len(folders_all)))
    normal_ok = True
    for S in J:
        sub = LoopFolder(G, f.H & S, tuple(k for k in f.K if k in S), S)
        normal_ok &= is_normal_subgroup(G, S) == is_normal_subfolder(f, sub)
    checks["normal_matches_normal"] = bool(normal_ok)

    Ls = [S for S in J if commutator_with(G, S, tau) == S]
    Y = all_subloops(X)
    psi = []
    psi_ok = True
    for y in Y:
        kappa = [f.K[m] for m in y.members]
        S = subgroup_generated(G, kappa)
        psi.append(J.index(S) if S in J else -1)
        psi_ok &= S in Ls
        # the inverse direction: l(φ(S)) is y again
        psi_ok &= tuple(f.position(k) for k in f.K if k in S) == y.members
    checks["psi_into_L"] = bool(psi_ok)
    checks["psi_bijective"] = sorted(psi) == sorted(J.index(S) for S in Ls) and len(set(psi)) == len(psi)
    return Correspondence(J, folders_all, Y, phi, psi, checks)
