"""Permutations acting on the right and a deterministic Schreier-Sims chain.

Products compose left to right: ``(p * q)(i) = q(p(i))``, so ``R(x) * R(y)``
sends ``z`` to ``(z*x)*y``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import ParseError


@dataclass(frozen=True)
class Perm:
    image: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.image) != list(range(len(self.image))):
            raise ValueError(f"not a permutation: {self.image}")

    @classmethod
    def identity(cls, degree: int) -> Perm:
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, *cycles: Sequence[int]) -> Perm:
        img = list(range(degree))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a] = b
        return cls(tuple(img))

    @property
    def degree(self) -> int:
        return len(self.image)

    def __call__(self, i: int) -> int:
        return self.image[i]

    def __mul__(self, other: Perm) -> Perm:
        q = other.image
        return Perm(tuple(q[i] for i in self.image))

    def __invert__(self) -> Perm:
        inv = [0] * len(self.image)
        for i, j in enumerate(self.image):
            inv[j] = i
        return Perm(tuple(inv))

    inverse = __invert__

    def __pow__(self, m: int) -> Perm:
        base = self if m >= 0 else ~self
        out = Perm.identity(self.degree)
        for _ in range(abs(m)):
            out = out * base
        return out

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.image))

    def fixed_points(self) -> list[int]:
        return [i for i, j in enumerate(self.image) if i == j]

    def cycle_type(self) -> tuple[int, ...]:
        seen = [False] * len(self.image)
        lengths = []
        for i in range(len(self.image)):
            if not seen[i]:
                n = 0
                j = i
                while not seen[j]:
                    seen[j] = True
                    j = self.image[j]
                    n += 1
                lengths.append(n)
        return tuple(sorted(lengths))

    def order(self) -> int:
        from math import lcm
        out = 1
        for c in self.cycle_type():
            out = lcm(out, c)
        return out

    def dumps(self) -> str:
        return "p: " + " ".join(map(str, self.image))

    @classmethod
    def loads(cls, line: str) -> Perm:
        line = line.strip()
        if not line.startswith("p:"):
            raise ParseError(f"bad permutation line: {line!r}")
        try:
            return cls(tuple(int(t) for t in line[2:].split()))
        except ValueError as exc:
            raise ParseError(str(exc)) from exc

    def __repr__(self):
        return f"Perm({list(self.image)})"


def _perm_mul(p: tuple, q: tuple) -> tuple:
    return tuple(q[i] for i in p)


def _perm_inv(p: tuple) -> tuple:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


@dataclass
class _Level:
    point: int
    gens: list  # strong generators fixing all earlier base points
    transversal: dict = field(default_factory=dict)  # orbit point -> coset rep (tuple)


class PermGroupBSGS:
    """Stabilizer chain for the group generated by ``generators``.

    The base is extended with the smallest moved point whenever a new level
    is needed; an optional ``base_prefix`` is placed first (used for base
    change in :func:`point_stabilizer`).
    """

    def __init__(self, generators: Iterable[Perm], degree: int | None = None,
                 base_prefix: Sequence[int] = ()):
        gens = [g for g in generators]
        if degree is None:
            if not gens:
                raise ValueError("degree required for an empty generating set")
            degree = gens[0].degree
        if any(g.degree != degree for g in gens):
            raise ValueError("generators must share a degree")
        self.degree = degree
        self.generators = gens
        self._ident = tuple(range(degree))
        self.levels: list[_Level] = []
        self._build([g.image for g in gens if not g.is_identity()], list(base_prefix))

    # -- construction -------------------------------------------------
    def _orbit(self, level: _Level):
        root = level.point
        trans = {root: self._ident}
        queue = deque([root])
        while queue:
            b = queue.popleft()
            u = trans[b]
            for s in level.gens:
                c = s[b]
                if c not in trans:
                    trans[c] = _perm_mul(u, s)
                    queue.append(c)
        level.transversal = trans

    def _sift(self, g: tuple, start: int = 0):
        for i in range(start, len(self.levels)):
            lv = self.levels[i]
            b = g[lv.point]
            u = lv.transversal.get(b)
            if u is None:
                return g, i
            g = _perm_mul(g, _perm_inv(u))
        return g, len(self.levels)

    def _first_moved(self, g: tuple) -> int:
        used = {lv.point for lv in self.levels}
        for i, j in enumerate(g):
            if i != j and i not in used:
                return i
        raise AssertionError("element fixes every point but is not the identity")

    def _build(self, gens: list, prefix: list):
        for pt in prefix:
            self.levels.append(_Level(pt, []))
        for g in gens:
            if all(g[lv.point] == lv.point for lv in self.levels):
                self.levels.append(_Level(self._first_moved(g), []))
        for i, lv in enumerate(self.levels):
            lv.gens = [g for g in gens
                       if all(g[self.levels[j].point] == self.levels[j].point for j in range(i))]
        for lv in self.levels:
            self._orbit(lv)

        i = len(self.levels) - 1
        while i >= 0:
            lv = self.levels[i]
            restart = False
            for b in list(lv.transversal):
                u = lv.transversal[b]
                for s in lv.gens:
                    us = _perm_mul(u, s)
                    h = _perm_mul(us, _perm_inv(lv.transversal[us[lv.point]]))
                    if h == self._ident:
                        continue
                    res, j = self._sift(h, i + 1)
                    if res == self._ident and j == len(self.levels):
                        continue
                    if j == len(self.levels):
                        self.levels.append(_Level(self._first_moved(res), []))
                    for k in range(i + 1, j + 1):
                        self.levels[k].gens.append(res)
                        self._orbit(self.levels[k])
                    i = j
                    restart = True
                    break
                if restart:
                    break
            if not restart:
                i -= 1
        while self.levels and len(self.levels[-1].transversal) == 1 and self.levels[-1].point not in prefix:
            self.levels.pop()

    # -- queries -----------------------------------------------------------
    @property
    def base(self) -> list[int]:
        return [lv.point for lv in self.levels]

    @property
    def strong_generators(self) -> list[Perm]:
        seen = []
        for lv in self.levels:
            for g in lv.gens:
                if g not in seen:
                    seen.append(g)
        return [Perm(g) for g in seen]

    def order(self) -> int:
        out = 1
        for lv in self.levels:
            out *= len(lv.transversal)
        return out

    def contains(self, p: Perm) -> bool:
        if p.degree != self.degree:
            return False
        res, j = self._sift(p.image)
        return j == len(self.levels) and res == self._ident

    __contains__ = contains


def bsgs_build(gens: Sequence[Perm], degree: int | None = None) -> PermGroupBSGS:
    return PermGroupBSGS(gens, degree)


def bsgs_order(g: PermGroupBSGS) -> int:
    return g.order()


def bsgs_contains(g: PermGroupBSGS, p: Perm) -> bool:
    return g.contains(p)


def point_stabilizer(g: PermGroupBSGS, pt: int) -> PermGroupBSGS:
    """Stabilizer of ``pt``, via a rebuilt chain whose base starts at ``pt``."""
    if not 0 <= pt < g.degree:
        raise ValueError(f"point {pt} outside degree {g.degree}")
    chain = PermGroupBSGS(g.generators, g.degree, base_prefix=[pt])
    gens = [Perm(s) for s in (chain.levels[1].gens if len(chain.levels) > 1 else [])]
    return PermGroupBSGS(gens, g.degree)


def bfs_closure(gens: Sequence[Perm], degree: int) -> set[tuple]:
    """All products of ``gens``; the brute-force reference for group order."""
    ident = tuple(range(degree))
    seen = {ident}
    queue = deque([ident])
    imgs = [g.image for g in gens]
    while queue:
        a = queue.popleft()
        for s in imgs:
            b = _perm_mul(a, s)
            if b not in seen:
                seen.add(b)
                queue.append(b)
    return seen
