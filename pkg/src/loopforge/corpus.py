"""Reference corpora of small Bol and Bruck loops.

Orders up to ``EXHAUSTIVE_ORDER`` come from the exhaustive Bol search.  Past
that the corpus is assembled by construction: abelian groups, direct products
of smaller Bruck loops, Glauberman loops from the built-in odd groups, and (for the A_r corpus) small groups, which are Bol
loops whose inner mappings are conjugations.
"""
from __future__ import annotations

from .enumerate import EnumerationTask, enumerate_loops
from .group import FiniteGroup, cyclic_group, semidirect_product
from .library import abelian_group, abelian_types, enumerate_glauberman
from .loop import CayleyLoop, canonical_form, direct_product, has_aip, loop_from_group

EXHAUSTIVE_ORDER = 9


def _unique(loops) -> list[CayleyLoop]:
    seen = {}
    for X in loops:
        C = canonical_form(X)
        seen.setdefault(C.key, C)
    return sorted(seen.values(), key=lambda X: (X.n, X.key))


def exhaustive_bol(max_order: int = EXHAUSTIVE_ORDER) -> list[CayleyLoop]:
    return [X for n in range(1, max_order + 1) for X in enumerate_loops(EnumerationTask(n, "bol"))]


def abelian_loops(n: int) -> list[CayleyLoop]:
    return [loop_from_group(abelian_group(t)) for t in abelian_types(n)]


def _dihedral(n: int) -> FiniteGroup:
    inv = [[x for x in range(n)], [(-x) % n for x in range(n)]]
    return semidirect_product(cyclic_group(n), cyclic_group(2), inv)


def small_groups(n: int) -> list[FiniteGroup]:
    """Every group of order n, for n ≤ 12 (only abelian groups are listed at orders 8 and below)."""
    out = [abelian_group(t) for t in abelian_types(n)]
    if n == 10:
        out.append(_dihedral(5))
    elif n == 12:
        out.append(_dihedral(6))
        v4 = abelian_group((2, 2))
        rot = [0, 2, 3, 1]                     # cycles the three involutions of V4
        out.append(semidirect_product(v4, cyclic_group(3), [[0, 1, 2, 3], rot, [rot[r] for r in rot]]))
        inv3 = [[0, 1, 2], [0, 2, 1]]
        out.append(semidirect_product(cyclic_group(3), cyclic_group(4), inv3 + inv3))
    return out


def bruck_corpus(max_order: int = 16, base: list[CayleyLoop] | None = None,
                 glauberman: bool = True) -> list[CayleyLoop]:
    """Bruck loops of order ≤ max_order: exhaustive part plus constructed loops above it."""
    base = exhaustive_bol() if base is None else base
    small = [X for X in base if X.n <= EXHAUSTIVE_ORDER and has_aip(X)]
    built = []
    for n in range(EXHAUSTIVE_ORDER + 1, max_order + 1):
        built += abelian_loops(n)
    for A in small:
        for B in small:
            if A.n > 1 and B.n > 1 and EXHAUSTIVE_ORDER < A.n * B.n <= max_order:
                built.append(direct_product(A, B))
    if glauberman:
        built += [X for _, _, X in enumerate_glauberman(81) if EXHAUSTIVE_ORDER < X.n <= max_order]
    return _unique(small + built)


def bol_ar_corpus(max_order: int = 12, base: list[CayleyLoop] | None = None) -> list[CayleyLoop]:
    """Bol A_r-loops of order ≤ max_order: exhaustive part plus every group of orders 10 to 12."""
    from .structure import is_ar_loop
    base = exhaustive_bol() if base is None else base
    small = [X for X in base if X.n <= EXHAUSTIVE_ORDER and is_ar_loop(X)]
    built = [loop_from_group(G) for n in range(EXHAUSTIVE_ORDER + 1, max_order + 1)
             for G in small_groups(n)]
    return _unique(small + built)


def theorem1_example() -> CayleyLoop:
    """C3 × a nonassociative Bruck loop of order 8: both parts of the decomposition nontrivial."""
    from .loop import is_bruck
    X8 = next(X for X in enumerate_loops(EnumerationTask(8, "bruck", nonassociative=True)) if is_bruck(X))
    return direct_product(loop_from_group(cyclic_group(3)), X8)

