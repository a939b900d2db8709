"""Built-in odd-order groups, their involutory automorphisms, and the loops built from them."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterator

import numpy as np

from .bruck import TauAut, glauberman_faithful, glauberman_folder
from .errors import BoundExceeded
from .folder import loop_of_folder
from .group import (FiniteGroup, cyclic_group, direct_product, is_automorphism,
                    semidirect_product, subgroup_generated)
from .loop import CayleyLoop, is_bruck


@dataclass(frozen=True)
class OddGroup:
    name: str
    group: FiniteGroup
    abelian_type: tuple | None = None     # cyclic factor orders for abelian groups


def _prime_factors(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _partitions(n: int, largest: int | None = None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def abelian_types(order: int) -> list[tuple[int, ...]]:
    """Cyclic decompositions (prime-power factors) of every abelian group of this order."""
    per_prime = []
    for p, e in sorted(_prime_factors(order).items()):
        per_prime.append([tuple(p ** k for k in part) for part in _partitions(e)])
    if not per_prime:
        return [()]
    return [sum(choice, ()) for choice in product(*per_prime)]


def abelian_group(factors) -> FiniteGroup:
    """Direct product of cyclic groups; coordinates are mixed radix, first factor most significant."""
    G = cyclic_group(1)
    for n in factors:
        G = direct_product(G, cyclic_group(n))
    return G


def _coords(factors, g: int) -> list[int]:
    out = []
    for n in reversed(factors):
        out.append(g % n)
        g //= n
    return out[::-1]


def _index(factors, coords) -> int:
    g = 0
    for n, c in zip(factors, coords):
        g = g * n + c % n
    return g


def _cyclic_action(N: FiniteGroup, phi, q: int) -> list[list[int]]:
    """Action rows for C_q acting on N through powers of the automorphism ``phi``."""
    phi = np.asarray(phi, dtype=np.intp)
    rows = [np.arange(N.m)]
    for _ in range(q - 1):
        rows.append(phi[rows[-1]])
    if not np.array_equal(phi[rows[-1]], rows[0]):
        raise ValueError("automorphism order does not divide the acting cyclic group")
    return [r.tolist() for r in rows]


def _power_map(n: int, r: int) -> list[int]:
    return [(x * r) % n for x in range(n)]


def _linear_map(factors, fn) -> list[int]:
    m = int(np.prod(factors)) if factors else 1
    return [_index(factors, fn(_coords(factors, g))) for g in range(m)]


def cyclic_extension(N: FiniteGroup, phi, q: int) -> FiniteGroup:
    return semidirect_product(N, cyclic_group(q), _cyclic_action(N, phi, q))


def _nonabelian() -> list[tuple[str, FiniteGroup]]:
    out = []
    for p, q, r in ((7, 3, 2), (13, 3, 3), (11, 5, 3), (19, 3, 7)):
        out.append((f"C{p}:C{q}", cyclic_extension(cyclic_group(p), _power_map(p, r), q)))
    he = cyclic_extension(abelian_group((3, 3)), _linear_map((3, 3), lambda c: (c[0], c[0] + c[1])), 3)
    m27 = cyclic_extension(cyclic_group(9), _power_map(9, 4), 3)
    out.append(("He27", he))
    out.append(("M27", m27))
    out.append(("C7:C9", cyclic_extension(cyclic_group(7), _power_map(7, 2), 9)))
    out.append(("C3xC7:C3", direct_product(cyclic_group(3), out[0][1])))
    out.append(("C5^2:C3", cyclic_extension(abelian_group((5, 5)),
                                             _linear_map((5, 5), lambda c: (-c[1], c[0] - c[1])), 3)))
    out.append(("C3xHe27", direct_product(cyclic_group(3), he)))
    out.append(("C3xM27", direct_product(cyclic_group(3), m27)))
    out.append(("C9:C9", cyclic_extension(cyclic_group(9), _power_map(9, 4), 9)))
    out.append(("C27:C3", cyclic_extension(cyclic_group(27), _power_map(27, 10), 3)))
    out.append(("C3wrC3", cyclic_extension(abelian_group((3, 3, 3)),
                                            _linear_map((3, 3, 3), lambda c: (c[2], c[0], c[1])), 3)))
    out.append(("(C9xC3):C3", cyclic_extension(abelian_group((9, 3)),
                                                _linear_map((9, 3), lambda c: (c[0], c[0] + c[1])), 3)))
    return out


@lru_cache(maxsize=None)
def odd_groups(bound: int = 81) -> tuple[OddGroup, ...]:
    """Every abelian group of odd order ≤ bound, then the built-in nonabelian ones."""
    out = []
    for n in range(1, bound + 1, 2):
        for t in abelian_types(n):
            name = "x".join(f"C{k}" for k in t) or "C1"
            out.append(OddGroup(name, abelian_group(t), t))
    for name, G in _nonabelian():
        if G.m <= bound:
            out.append(OddGroup(name, G))
    return tuple(out)


# -- involutory automorphisms ---------------------------------------------------------

def abelian_involutions(factors) -> list[tuple[int, ...]]:
    """One representative per Aut-conjugacy class: invert a chosen sub-multiset of factors."""
    reps = {}
    for mask in product((1, -1), repeat=len(factors)):
        key = tuple(sorted(n for n, s in zip(factors, mask) if s < 0))
        if key not in reps:
            reps[key] = _linear_map(factors, lambda c, mask=mask: [s * x for s, x in zip(mask, c)])
    return [tuple(v) for _, v in sorted(reps.items())]


def _generators(G: FiniteGroup) -> list[int]:
    """A short generating set: greedily add the element enlarging the generated subgroup most."""
    gens: list[int] = []
    S = frozenset({0})
    orders = G.element_orders
    while len(S) < G.m:
        best = max((x for x in range(G.m) if x not in S),
                   key=lambda x: (len(subgroup_generated(G, S | {x})), orders[x], -x))
        gens.append(best)
        S = subgroup_generated(G, S | {best})
    return gens


def _extend(G: FiniteGroup, gens, imgs):
    """The homomorphism sending gens to imgs, or None if the assignment does not extend."""
    phi = np.full(G.m, -1, dtype=np.intp)
    phi[0] = 0
    queue = [0]
    for g in queue:
        for s, t in zip(gens, imgs):
            gs = int(G.mul[g, s])
            v = int(G.mul[phi[g], t])
            if phi[gs] == -1:
                phi[gs] = v
                queue.append(gs)
            elif phi[gs] != v:
                return None
    return phi


def automorphisms_of(G: FiniteGroup) -> list[tuple[int, ...]]:
    """Every automorphism, by backtracking on generator images with partial consistency checks."""
    gens = _generators(G)
    orders = G.element_orders
    out = []

    def rec(i, imgs):
        if i == len(gens):
            phi = _extend(G, gens, imgs)
            if phi is not None and len(set(phi.tolist())) == G.m and is_automorphism(G, phi):
                out.append(tuple(phi.tolist()))
            return
        sub_gens = gens[: i + 1]
        H = subgroup_generated(G, sub_gens)
        elems = sorted(H)
        for y in range(G.m):
            if orders[y] != orders[gens[i]]:
                continue
            cand = imgs + [y]
            phi = _extend(G, sub_gens, cand)
            if phi is None:
                continue
            if len(set(phi[elems].tolist())) != len(elems):
                continue
            rec(i + 1, cand)

    rec(0, [])
    return out


def involutory_automorphisms(G: FiniteGroup, up_to_conjugacy: bool = True) -> list[tuple[int, ...]]:
    """Automorphisms t with t∘t = 1 (the identity included)."""
    auts = automorphisms_of(G)
    ident = np.arange(G.m)
    invs = [a for a in auts if np.array_equal(np.asarray(a)[np.asarray(a)], ident)]
    if not up_to_conjugacy:
        return sorted(invs)
    arrs = [np.asarray(a) for a in auts]
    inverses = []
    for a in arrs:
        b = np.empty_like(a)
        b[a] = ident
        inverses.append(b)
    reps, seen = [], set()
    for t in sorted(invs):
        if t in seen:
            continue
        reps.append(t)
        ta = np.asarray(t)
        for a, ai in zip(arrs, inverses):
            seen.add(tuple(a[ta[ai]].tolist()))
    return reps


def involutions_of(og: OddGroup) -> list[tuple[int, ...]]:
    if og.abelian_type is not None:
        return abelian_involutions(og.abelian_type)
    return _nonabelian_involutions(og.name, og.group.m)


@lru_cache(maxsize=None)
def _nonabelian_involutions(name: str, order: int) -> list[tuple[int, ...]]:
    og = next(g for g in odd_groups(max(order, 81)) if g.name == name)
    return involutory_automorphisms(og.group)


# -- Glauberman loops --------------------------------------------------------------------

@dataclass(frozen=True)
class GlaubermanCase:
    source: str
    group: FiniteGroup
    tau: TauAut

    @property
    def faithful(self) -> bool:
        return glauberman_faithful(self.group, self.tau)


def glauberman_cases(bound: int = 81) -> list[GlaubermanCase]:
    out = []
    for og in odd_groups(bound):
        for t in involutions_of(og):
            out.append(GlaubermanCase(og.name, og.group, TauAut(og.group, t)))
    return out


def enumerate_glauberman(bound: int = 81) -> Iterator[tuple[FiniteGroup, TauAut, CayleyLoop]]:
    """(L, t, l(L, C_L(t), K_L(t))) for every built-in odd group of order ≤ bound and each t."""
    if bound > 81:
        raise BoundExceeded(f"built-in odd groups stop at order 81, asked for {bound}")
    for case in glauberman_cases(bound):
        X = loop_of_folder(glauberman_folder(case.group, case.tau, cross_check=False))
        assert X.n % 2 == 1 and is_bruck(X)
        yield case.group, case.tau, X
