"""Fully enumerated finite groups and the normal-subgroup operators used on the group side.

Element sets are ``frozenset`` of element indices; index 0 is the identity.
"""
from __future__ import annotations

import hashlib
import json
from collections import deque
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import CapExceeded, NotNormal, NotSubgroup
from .perm import Perm, PermGroupBSGS

DEFAULT_CAP = 2 ** 20
ASSOC_CHECK_CAP = 512


class FiniteGroup:
    """A group given by its multiplication table.

    ``mul[a, b]`` is the index of ``a*b``; with permutation tags, ``a*b``
    means "apply ``a`` then ``b``".
    """

    def __init__(self, mul, labels: Sequence[Perm] | None = None, check: bool = True):
        mul = np.asarray(mul, dtype=np.intp)
        if mul.ndim != 2 or mul.shape[0] != mul.shape[1]:
            raise ValueError("multiplication table must be square")
        self.mul = mul
        self.mul.setflags(write=False)
        self.m = mul.shape[0]
        self.labels = list(labels) if labels is not None else None
        if check:
            self._check()
        inv = np.empty(self.m, dtype=np.intp)
        r, c = np.nonzero(mul == 0)
        inv[r] = c
        self.inv = inv
        self.inv.setflags(write=False)

    def _check(self):
        m = self.m
        ar = np.arange(m)
        if not (np.array_equal(self.mul[0], ar) and np.array_equal(self.mul[:, 0], ar)):
            raise ValueError("element 0 is not the identity")
        for axis in (0, 1):
            if not np.all(np.sort(self.mul, axis=axis) == (ar[:, None] if axis == 0 else ar[None, :])):
                raise ValueError("table is not a Latin square")
        if m <= ASSOC_CHECK_CAP:
            left = self.mul[self.mul, :]          # (a*b)*c  indexed [a, b, c]
            right = self.mul[:, self.mul]         # a*(b*c)  indexed [a, b, c]
            if not np.array_equal(left, right):
                raise ValueError("table is not associative")

    @property
    def order(self) -> int:
        return self.m

    def __len__(self):
        return self.m

    def __repr__(self):
        return f"FiniteGroup(order={self.m})"

    def all(self) -> frozenset:
        return frozenset(range(self.m))

    def conj(self, a: int, g: int) -> int:
        """``a^g = g^-1 a g``."""
        return int(self.mul[self.mul[self.inv[g], a], g])

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = int(self.inv[a]), -k
        out = 0
        for _ in range(k):
            out = int(self.mul[out, a])
        return out

    @cached_property
    def element_orders(self) -> np.ndarray:
        orders = np.zeros(self.m, dtype=np.intp)
        for a in range(self.m):
            x, k = a, 1
            while x != 0:
                x = self.mul[x, a]
                k += 1
            orders[a] = k
        return orders

    def commutator(self, a: int, b: int) -> int:
        inv, mul = self.inv, self.mul
        return int(mul[mul[inv[a], inv[b]], mul[a, b]])

    @cached_property
    def digest(self) -> str:
        return hashlib.sha256(np.ascontiguousarray(self.mul, dtype=np.int64).tobytes()).hexdigest()

    # -- serialization -----------------------------------------------------
    def to_json(self) -> dict:
        out = {"order": self.m, "mul": self.mul.tolist()}
        if self.labels is not None:
            out["labels"] = [list(p.image) for p in self.labels]
        return out

    @classmethod
    def from_json(cls, data: dict) -> FiniteGroup:
        labels = data.get("labels")
        group = cls(data["mul"], labels=[Perm(tuple(p)) for p in labels] if labels else None)
        if group.m != data["order"]:
            raise ValueError("order field disagrees with table")
        return group

    def dumps(self) -> str:
        return json.dumps(self.to_json())


# -- constructors ---------------------------------------------------------

def group_from_perms(perms: Sequence[Perm]) -> FiniteGroup:
    """Table of a list of permutations closed under products; ``perms[0]`` must be the identity."""
    P = np.array([p.image for p in perms], dtype=np.intp)
    m = len(perms)
    if not perms[0].is_identity():
        raise ValueError("first permutation must be the identity")
    keys = _perm_keys(P)
    order = np.argsort(keys)
    sorted_keys = keys[order]
    mul = np.empty((m, m), dtype=np.intp)
    step = max(1, 4_000_000 // (m * P.shape[1]))
    for a0 in range(0, m, step):
        # (a*b)(i) = b(a(i)); prods[b, a, i] for the rows a in this block
        prods = P[:, P[a0:a0 + step]]
        k = _perm_keys(prods.reshape(-1, P.shape[1]))
        pos = np.searchsorted(sorted_keys, k)
        if np.any(pos >= m) or np.any(sorted_keys[np.minimum(pos, m - 1)] != k):
            raise ValueError("permutation list is not closed under products")
        mul[a0:a0 + step] = order[pos].reshape(m, -1).T
    # closure was just verified and composition of permutations is associative
    return FiniteGroup(mul, labels=list(perms), check=False)


def _perm_keys(P: np.ndarray) -> np.ndarray:
    """Order-preserving collision-free keys for the rows of ``P``.

    Small degrees pack each row into one int64 (base-n digits); larger ones
    fall back to viewing the row as an opaque byte string.
    """
    n = P.shape[1]
    if n ** n < 2 ** 62:
        weights = n ** np.arange(n - 1, -1, -1, dtype=np.int64)
        return P.astype(np.int64) @ weights
    B = np.ascontiguousarray(P.astype(">u2"))
    return B.view(np.dtype((np.void, 2 * n))).ravel()


def enumerate_group(g: PermGroupBSGS, cap: int = DEFAULT_CAP,
                    first: Sequence[Perm] = ()) -> FiniteGroup:
    """Enumerate ``g`` into a table group.

    Elements come in BFS order from the identity over the generators, except
    that the permutations in ``first`` (if given, and in ``g``) are placed
    directly after the identity in the given order.
    """
    order = g.order()
    if order > cap:
        raise CapExceeded(order, cap)
    ident = tuple(range(g.degree))
    elems = [ident]
    seen = {ident}
    for p in first:
        if p.image not in seen:
            seen.add(p.image)
            elems.append(p.image)
    gens = [p.image for p in g.generators]
    queue = deque(elems)
    while queue:
        a = queue.popleft()
        for s in gens:
            b = tuple(s[i] for i in a)
            if b not in seen:
                seen.add(b)
                elems.append(b)
                queue.append(b)
    if len(elems) != order:
        raise AssertionError(f"closure size {len(elems)} != chain order {order}")
    return group_from_perms([Perm(e) for e in elems])


def cyclic_group(n: int) -> FiniteGroup:
    ar = np.arange(n)
    return FiniteGroup((ar[:, None] + ar[None, :]) % n)


def direct_product(A: FiniteGroup, B: FiniteGroup) -> FiniteGroup:
    """Element ``(a, b)`` has index ``a * |B| + b``."""
    ma, mb = A.m, B.m
    a = np.arange(ma * mb) // mb
    b = np.arange(ma * mb) % mb
    mul = A.mul[a[:, None], a[None, :]] * mb + B.mul[b[:, None], b[None, :]]
    return FiniteGroup(mul, check=False)


def semidirect_product(N: FiniteGroup, Q: FiniteGroup, action: Sequence[Sequence[int]]) -> FiniteGroup:
    """``N ⋊ Q`` with ``action[q][n] = q n q^-1``.

    Elements ``n q`` are indexed ``n * |Q| + q``;
    ``(n1 q1)(n2 q2) = n1 (q1 n2 q1^-1) q1 q2``.
    """
    act = np.asarray(action, dtype=np.intp)
    mn, mq = N.m, Q.m
    n = np.arange(mn * mq) // mq
    q = np.arange(mn * mq) % mq
    n2 = act[q[:, None], n[None, :]]
    mul = N.mul[n[:, None], n2] * mq + Q.mul[q[:, None], q[None, :]]
    return FiniteGroup(mul, check=mn * mq <= ASSOC_CHECK_CAP)


def relabel(G: FiniteGroup, order: Sequence[int]) -> FiniteGroup:
    """Same group with element ``order[i]`` renamed ``i``; ``order[0]`` must be 0."""
    order = np.asarray(order, dtype=np.intp)
    new = np.empty_like(order)
    new[order] = np.arange(len(order))
    labels = [G.labels[i] for i in order] if G.labels else None
    return FiniteGroup(new[G.mul[np.ix_(order, order)]], labels=labels, check=False)


# -- subgroups -------------------------------------------------------------

def subgroup_generated(G: FiniteGroup, S: Iterable[int]) -> frozenset:
    gens = sorted({int(s) for s in S} - {0})
    members = {0}
    frontier = [0]
    if not gens:
        return frozenset(members)
    garr = np.array(gens, dtype=np.intp)
    while frontier:
        prods = G.mul[np.asarray(frontier)[:, None], garr[None, :]].ravel()
        frontier = []
        for x in prods.tolist():
            if x not in members:
                members.add(x)
                frontier.append(x)
    return frozenset(members)


def is_subgroup(G: FiniteGroup, S: Iterable[int]) -> bool:
    s = np.array(sorted(set(S)), dtype=np.intp)
    if len(s) == 0 or s[0] != 0:
        return False
    prods = G.mul[np.ix_(s, s)]
    return bool(np.isin(prods, s).all())


def _require_subgroup(G, S):
    if not is_subgroup(G, S):
        raise NotSubgroup(f"{sorted(S)[:8]}... is not a subgroup")


def conjugate_set(G: FiniteGroup, S: Iterable[int], g: int) -> frozenset:
    s = np.fromiter(S, dtype=np.intp)
    return frozenset(G.mul[G.mul[G.inv[g], s], g].tolist())


def is_normal_subgroup(G: FiniteGroup, N: Iterable[int]) -> bool:
    N = frozenset(N)
    if not is_subgroup(G, N):
        return False
    n = np.array(sorted(N), dtype=np.intp)
    g = np.arange(G.m)
    conj = G.mul[G.mul[G.inv[g][:, None], n[None, :]], g[:, None]]
    return bool(np.isin(conj, n).all())


def normal_closure(G: FiniteGroup, S: Iterable[int]) -> frozenset:
    s = np.fromiter(set(S) | {0}, dtype=np.intp)
    g = np.arange(G.m)
    conj = G.mul[G.mul[G.inv[g][:, None], s[None, :]], g[:, None]]
    return subgroup_generated(G, np.unique(conj).tolist())


def core_in(G: FiniteGroup, H: Iterable[int]) -> frozenset:
    """Largest normal subgroup of G inside H: the intersection of all conjugates."""
    H = frozenset(H)
    _require_subgroup(G, H)
    h = np.array(sorted(H), dtype=np.intp)
    g = np.arange(G.m)
    # x lies in every H^g  iff  g x g^-1 in H for every g
    x = np.array(sorted(H), dtype=np.intp)
    conj = G.mul[G.mul[g[:, None], x[None, :]], G.inv[g][:, None]]
    keep = np.isin(conj, h).all(axis=0)
    return frozenset(x[keep].tolist())


def centralizer(G: FiniteGroup, S: Iterable[int], within: Iterable[int] | None = None) -> frozenset:
    s = np.fromiter(S, dtype=np.intp)
    cand = np.arange(G.m) if within is None else np.array(sorted(within), dtype=np.intp)
    if len(s) == 0:
        return frozenset(cand.tolist())
    ok = (G.mul[cand[:, None], s[None, :]] == G.mul[s[None, :], cand[:, None]]).all(axis=1)
    return frozenset(cand[ok].tolist())


def center(G: FiniteGroup) -> frozenset:
    return centralizer(G, range(G.m))


def normalizer(G: FiniteGroup, S: Iterable[int], within: Iterable[int] | None = None) -> frozenset:
    """Setwise normalizer ``{g : S^g = S}``."""
    S = frozenset(S)
    s = np.array(sorted(S), dtype=np.intp)
    cand = range(G.m) if within is None else sorted(within)
    return frozenset(g for g in cand if conjugate_set(G, s.tolist(), g) == S)


def set_product(G: FiniteGroup, A: Iterable[int], B: Iterable[int]) -> frozenset:
    a = np.fromiter(A, dtype=np.intp)
    b = np.fromiter(B, dtype=np.intp)
    return frozenset(np.unique(G.mul[a[:, None], b[None, :]]).tolist())


def commutator_subgroup(G: FiniteGroup, A: Iterable[int], B: Iterable[int] | None = None) -> frozenset:
    a = np.array(sorted(A), dtype=np.intp)
    b = a if B is None else np.array(sorted(B), dtype=np.intp)
    inv, mul = G.inv, G.mul
    comm = mul[mul[inv[a][:, None], inv[b][None, :]], mul[a[:, None], b[None, :]]]
    return subgroup_generated(G, np.unique(comm).tolist())


def derived_series(G: FiniteGroup) -> list[frozenset]:
    series = [G.all()]
    while True:
        nxt = commutator_subgroup(G, series[-1])
        if nxt == series[-1]:
            return series
        series.append(nxt)


def group_solvable(G: FiniteGroup) -> bool:
    return derived_series(G)[-1] == frozenset({0})


def _is_prime_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def _conjugacy_reps(G: FiniteGroup, cand: Iterable[int]) -> list[int]:
    seen = set()
    reps = []
    g = np.arange(G.m)
    for x in cand:
        if x in seen:
            continue
        reps.append(x)
        seen.update(G.mul[G.mul[G.inv[g], x], g].tolist())
    return reps


def o2_group(G: FiniteGroup) -> frozenset:
    """Largest normal 2-subgroup: join of all 2-elements whose normal closure is a 2-group."""
    orders = G.element_orders
    keep = [0]
    for x in _conjugacy_reps(G, [a for a in range(1, G.m) if _is_prime_power(int(orders[a]), 2)]):
        if _is_prime_power(len(normal_closure(G, [x])), 2):
            keep.append(x)
    return normal_closure(G, keep)


def o_odd_group(G: FiniteGroup) -> frozenset:
    """Largest normal subgroup of odd order."""
    orders = G.element_orders
    keep = [0]
    for x in _conjugacy_reps(G, [a for a in range(1, G.m) if orders[a] % 2 == 1]):
        if len(normal_closure(G, [x])) % 2 == 1:
            keep.append(x)
    return normal_closure(G, keep)


def upper_two_prime(G: FiniteGroup) -> frozenset:
    """Subgroup generated by all 2-elements."""
    orders = G.element_orders
    return subgroup_generated(G, [a for a in range(G.m) if _is_prime_power(int(orders[a]), 2)])


def coset_ids(G: FiniteGroup, N: Iterable[int], side: str = "right") -> np.ndarray:
    """Map each element to the smallest element of its coset ``N g`` (right) or ``g N`` (left)."""
    n = np.array(sorted(N), dtype=np.intp)
    g = np.arange(G.m)
    if side == "right":
        return G.mul[n[:, None], g[None, :]].min(axis=0)
    return G.mul[g[:, None], n[None, :]].min(axis=1)


def quotient_group(G: FiniteGroup, N: Iterable[int]) -> tuple[FiniteGroup, np.ndarray]:
    """``G/N`` and the projection array (element -> coset index); cosets ordered by least member."""
    N = frozenset(N)
    if not is_normal_subgroup(G, N):
        raise NotNormal("quotient requires a normal subgroup")
    cid = coset_ids(G, N)
    reps = np.unique(cid)
    index = np.full(G.m, -1, dtype=np.intp)
    index[reps] = np.arange(len(reps))
    proj = index[cid]
    mul = proj[G.mul[np.ix_(reps, reps)]]
    return FiniteGroup(mul, check=False), proj


def image_set(proj: np.ndarray, S: Iterable[int]) -> frozenset:
    return frozenset(proj[np.fromiter(S, dtype=np.intp)].tolist())


def all_subgroups(G: FiniteGroup) -> list[frozenset]:
    """Every subgroup, by repeatedly adjoining cyclic subgroups (desk-scale only)."""
    cyclic = sorted({subgroup_generated(G, [x]) for x in range(G.m)}, key=lambda s: (len(s), sorted(s)))
    found = {frozenset({0})}
    queue = deque([frozenset({0})])
    while queue:
        S = queue.popleft()
        for C in cyclic:
            if C <= S:
                continue
            T = subgroup_generated(G, S | C)
            if T not in found:
                found.add(T)
                queue.append(T)
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def subgroup_table(G: FiniteGroup, S: Iterable[int]) -> tuple[FiniteGroup, list[int]]:
    """The subgroup S as a table group (elements renumbered in sorted order) and the map back."""
    elems = sorted(set(int(s) for s in S))
    if not elems or elems[0] != 0:
        raise NotSubgroup("subgroup must contain the identity")
    idx = np.full(G.m, -1, dtype=np.intp)
    idx[elems] = np.arange(len(elems))
    sub = idx[G.mul[np.ix_(elems, elems)]]
    if (sub < 0).any():
        raise NotSubgroup("set is not closed under multiplication")
    labels = [G.labels[g] for g in elems] if G.labels else None
    return FiniteGroup(sub, labels=labels, check=False), elems


def all_normal_subgroups(G: FiniteGroup) -> list[frozenset]:
    """Every normal subgroup, as joins of normal closures of single elements."""
    closures = {normal_closure(G, [x]) for x in range(G.m)}
    found = {frozenset({0})}
    queue = deque(found)
    while queue:
        S = queue.popleft()
        for C in closures:
            if C <= S:
                continue
            T = subgroup_generated(G, S | C)
            if T not in found:
                found.add(T)
                queue.append(T)
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def is_automorphism(G: FiniteGroup, image: Sequence[int]) -> bool:
    img = np.asarray(image, dtype=np.intp)
    if sorted(img.tolist()) != list(range(G.m)) or img[0] != 0:
        return False
    return bool(np.array_equal(img[G.mul], G.mul[img[:, None], img[None, :]]))
