"""Finite loops as Cayley tables with the identity pinned at index 0."""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (InversesUndefined, NoIdentity, NotBol, NotLatinSquare, NotNormal,
                     NotSubloop, ParseError)
from .perm import Perm


class CayleyLoop:
    """A finite loop; ``table[i, j]`` is ``i∘j`` and 0 is the identity.

    Instances are immutable. Build them with :func:`validate_loop` unless the
    table is known to be a loop already.
    """

    def __init__(self, table, _checked: bool = False):
        t = np.array(table, dtype=np.intp)
        t.setflags(write=False)
        self.table = t
        self.n = t.shape[0]
        if not _checked:
            _check_table(t)

    def __eq__(self, other):
        return isinstance(other, CayleyLoop) and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"CayleyLoop(n={self.n})"

    def __len__(self):
        return self.n

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    @cached_property
    def key(self) -> bytes:
        return self.table.astype(np.uint8 if self.n < 256 else np.uint16).tobytes()

    @cached_property
    def bol(self) -> bool:
        return bol_counterexample(self) is None

    @cached_property
    def associative(self) -> bool:
        T = self.table
        return bool(np.array_equal(T[T, :], T[:, T]))

    @cached_property
    def commutative(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    @cached_property
    def right_div(self) -> np.ndarray:
        """``right_div[c, b]`` is the unique ``a`` with ``a∘b = c``."""
        out = np.empty_like(self.table)
        rows = np.arange(self.n)
        for b in range(self.n):
            out[self.table[:, b], b] = rows
        return out

    @cached_property
    def left_div(self) -> np.ndarray:
        """``left_div[a, c]`` is the unique ``b`` with ``a∘b = c``."""
        out = np.empty_like(self.table)
        cols = np.arange(self.n)
        for a in range(self.n):
            out[a, self.table[a]] = cols
        return out

    @cached_property
    def _powers(self) -> list[list[int]]:
        if not self.bol:
            raise NotBol("element orders are only defined here for Bol loops")
        out = []
        for x in range(self.n):
            seq = [0]
            y = x
            while y != 0:
                seq.append(y)
                y = int(self.table[y, x])
            out.append(seq)
        return out

    def dumps(self) -> str:
        lines = [str(self.n)] + [" ".join(map(str, row)) for row in self.table.tolist()]
        return "\n".join(lines) + "\n"


def _check_table(t: np.ndarray):
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise ValueError("table must be a non-empty square array")
    n = t.shape[0]
    if t.min() < 0 or t.max() >= n:
        raise ValueError(f"entries must lie in 0..{n - 1}")
    for i in range(n):
        if len(set(t[i].tolist())) != n:
            vals, counts = np.unique(t[i], return_counts=True)
            raise NotLatinSquare("row", i, int(vals[counts > 1][0]))
    for j in range(n):
        if len(set(t[:, j].tolist())) != n:
            vals, counts = np.unique(t[:, j], return_counts=True)
            raise NotLatinSquare("column", j, int(vals[counts > 1][0]))
    for a in range(n):
        if t[0, a] != a:
            raise NoIdentity(0, a, int(t[0, a]))
        if t[a, 0] != a:
            raise NoIdentity(a, 0, int(t[a, 0]))


def validate_loop(table) -> CayleyLoop:
    return CayleyLoop(table)


def loads(text: str) -> CayleyLoop:
    """Parse the ``.loop`` text format."""
    rows = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    try:
        n = int(rows[0])
        table = [[int(v) for v in r.split()] for r in rows[1:]]
    except (IndexError, ValueError) as exc:
        raise ParseError(f"malformed loop file: {exc}") from exc
    if len(table) != n or any(len(r) != n for r in table):
        raise ParseError(f"expected {n} rows of {n} entries")
    return validate_loop(table)


def read_loop(path) -> CayleyLoop:
    with open(path, "r", encoding="ascii") as fh:
        return loads(fh.read())


def write_loop(X: CayleyLoop, path):
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(X.dumps())


@dataclass(frozen=True)
class SubloopSet:
    parent: CayleyLoop
    members: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(sorted(set(int(m) for m in self.members))))

    def __len__(self):
        return len(self.members)

    def __contains__(self, x):
        return x in self.members

    def __iter__(self):
        return iter(self.members)

    @property
    def order(self) -> int:
        return len(self.members)

    def as_set(self) -> frozenset:
        return frozenset(self.members)

    def loop(self) -> CayleyLoop:
        """The subloop as a standalone loop, relabelled in sorted member order."""
        idx = {m: i for i, m in enumerate(self.members)}
        sub = self.parent.table[np.ix_(self.members, self.members)]
        return CayleyLoop([[idx[int(v)] for v in row] for row in sub.tolist()])

    def __eq__(self, other):
        return isinstance(other, SubloopSet) and self.members == other.members

    def __hash__(self):
        return hash(self.members)


@dataclass(frozen=True)
class LoopHom:
    source: CayleyLoop
    target: CayleyLoop
    map: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(int(v) for v in self.map))

    def is_homomorphism(self) -> bool:
        f = np.asarray(self.map)
        S, T = self.source.table, self.target.table
        return f[0] == 0 and bool(np.array_equal(f[S], T[f[:, None], f[None, :]]))

    def is_bijective(self) -> bool:
        return sorted(self.map) == list(range(self.target.n)) and self.source.n == self.target.n

    def kernel(self) -> SubloopSet:
        return SubloopSet(self.source, [i for i, v in enumerate(self.map) if v == 0])

    def __call__(self, x: int) -> int:
        return self.map[x]


# -- translations and identities ---------------------------------------------------

def right_translation(X: CayleyLoop, x: int) -> Perm:
    return Perm(tuple(X.table[:, x].tolist()))


def left_translation(X: CayleyLoop, x: int) -> Perm:
    return Perm(tuple(X.table[x, :].tolist()))


def bol_counterexample(X: CayleyLoop) -> tuple[int, int, int] | None:
    """First ``(z, x, y)`` violating ((z∘x)∘y)∘x = z∘((x∘y)∘x), or None."""
    T = X.table
    n = X.n
    for x in range(n):
        zx = T[:, x]
        lhs = T[T[zx, :], x]                 # [z, y]
        w = T[T[x, :], x]                    # [y]
        rhs = T[:, w]                        # [z, y]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            z, y = bad[0]
            return int(z), x, int(y)
    return None


def is_bol(X: CayleyLoop) -> bool:
    return X.bol


def two_sided_inverses(X: CayleyLoop) -> np.ndarray:
    """Array of two-sided inverses; raises InversesUndefined at the first element lacking one."""
    right = np.argmin(X.table != 0, axis=1)   # x∘right[x] = 0
    left = np.argmin(X.table != 0, axis=0)    # left[x]∘x = 0
    bad = np.nonzero(right != left)[0]
    if len(bad):
        raise InversesUndefined(int(bad[0]))
    return right


def aip_counterexample(X: CayleyLoop) -> tuple[int, int] | None:
    inv = two_sided_inverses(X)
    T = X.table
    bad = np.argwhere(inv[T] != T[inv[:, None], inv[None, :]])
    if len(bad):
        return int(bad[0][0]), int(bad[0][1])
    return None


def has_aip(X: CayleyLoop) -> bool:
    return aip_counterexample(X) is None


def is_bruck(X: CayleyLoop) -> bool:
    return X.bol and has_aip(X)


def is_group(X: CayleyLoop) -> bool:
    return X.associative


# -- powers ---------------------------------------------------------------

def element_order(X: CayleyLoop, x: int) -> int:
    return len(X._powers[x])


def power(X: CayleyLoop, x: int, m: int) -> int:
    seq = X._powers[x]
    return seq[m % len(seq)]


def inverse(X: CayleyLoop, x: int) -> int:
    return power(X, x, -1)


def element_orders(X: CayleyLoop) -> list[int]:
    return [len(s) for s in X._powers]


def is_two_power(k: int) -> bool:
    return k > 0 and k & (k - 1) == 0


# -- subloops -------------------------------------------------------------

def subloop_generated(X: CayleyLoop, S: Iterable[int]) -> SubloopSet:
    """Smallest subloop containing S; closure under ∘ suffices in a finite loop."""
    T = X.table
    members = [0]
    seen = {0}
    for s in S:
        s = int(s)
        if s not in seen:
            seen.add(s)
            members.append(s)
    i = 0
    while i < len(members):
        a = members[i]
        new = T[a, members[: i + 1]].tolist() + T[members[: i + 1], a].tolist()
        for c in new:
            if c not in seen:
                seen.add(c)
                members.append(c)
        i += 1
    return SubloopSet(X, members)


def is_subloop(X: CayleyLoop, S: Iterable[int]) -> bool:
    s = np.array(sorted(set(S)), dtype=np.intp)
    if len(s) == 0 or s[0] != 0:
        return False
    return bool(np.isin(X.table[np.ix_(s, s)], s).all())


def _as_members(Y) -> np.ndarray:
    return np.array(sorted(Y.members if isinstance(Y, SubloopSet) else set(Y)), dtype=np.intp)


def is_normal_subloop(X: CayleyLoop, Y) -> bool:
    """a∘(Y∘b) = Y∘(a∘b) = (a∘Y)∘b as sets for all a, b."""
    y = _as_members(Y)
    if not is_subloop(X, y.tolist()):
        raise NotSubloop(f"{y.tolist()} is not a subloop")
    T = X.table
    a = np.arange(X.n)
    Yb = T[y[None, :], a[:, None]]                       # [b, y] = y∘b
    s1 = np.sort(T[a[:, None, None], Yb[None, :, :]], axis=2)    # [a, b, .] a∘(y∘b)
    ab = T[a[:, None], a[None, :]]
    s2 = np.sort(T[y[None, None, :], ab[:, :, None]], axis=2)    # y∘(a∘b)
    aY = T[a[:, None], y[None, :]]                       # [a, y] = a∘y
    s3 = np.sort(T[aY[:, None, :], a[None, :, None]], axis=2)    # (a∘y)∘b
    return bool(np.array_equal(s1, s2) and np.array_equal(s2, s3))


def factor_loop(X: CayleyLoop, Y) -> tuple[CayleyLoop, LoopHom]:
    """X/Y on the cosets Y∘x, ordered by least member, with the projection."""
    y = _as_members(Y)
    if not is_normal_subloop(X, y):
        raise NotNormal(f"{y.tolist()} is not normal")
    T = X.table
    cid = T[y[:, None], np.arange(X.n)[None, :]].min(axis=0)
    reps = np.unique(cid)
    index = np.full(X.n, -1, dtype=np.intp)
    index[reps] = np.arange(len(reps))
    proj = index[cid]
    Q = CayleyLoop(proj[T[np.ix_(reps, reps)]])
    return Q, LoopHom(X, Q, proj)


def center(X: CayleyLoop) -> SubloopSet:
    T = X.table
    n = X.n
    members = []
    for a in range(n):
        r1 = T[a, T]                          # a∘(x∘y)   [x, y]
        r2 = T[:, T[a, :]]                    # x∘(a∘y)
        r3 = T[T[:, a], :]                    # (x∘a)∘y
        r4 = T[np.arange(n)[:, None], T[:, a][None, :]]   # x∘(y∘a)
        if np.array_equal(r1, r2) and np.array_equal(r2, r3) and np.array_equal(r3, r4):
            members.append(a)
    Z = SubloopSet(X, members)
    assert is_normal_subloop(X, Z), "center failed to be normal"
    return Z


def all_subloops(X: CayleyLoop) -> list[SubloopSet]:
    found = {(0,)}
    queue = deque([(0,)])
    while queue:
        S = queue.popleft()
        for x in range(X.n):
            if x in S:
                continue
            T = subloop_generated(X, S + (x,)).members
            if T not in found:
                found.add(T)
                queue.append(T)
    return [SubloopSet(X, m) for m in sorted(found, key=lambda s: (len(s), s))]


def all_normal_subloops(X: CayleyLoop) -> list[SubloopSet]:
    return [S for S in all_subloops(X) if is_normal_subloop(X, S)]


def congruence_kernel(X: CayleyLoop, pairs: Iterable[tuple[int, int]]) -> SubloopSet:
    """Class of 0 in the smallest congruence containing ``pairs``."""
    n = X.n
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        if ra > rb:
            ra, rb = rb, ra
        parent[rb] = ra
        return True

    for a, b in pairs:
        union(int(a), int(b))
    T = X.table.tolist()
    changed = True
    while changed:
        changed = False
        roots = [find(a) for a in range(n)]
        for a in range(n):
            r = roots[a]
            if r == a:
                continue
            for c in range(n):
                if union(T[a][c], T[r][c]):
                    changed = True
                if union(T[c][a], T[c][r]):
                    changed = True
    root0 = find(0)
    N = SubloopSet(X, [a for a in range(n) if find(a) == root0])
    assert is_normal_subloop(X, N)
    return N


def normal_closure(X: CayleyLoop, S: Iterable[int]) -> SubloopSet:
    return congruence_kernel(X, [(int(s), 0) for s in S])


def normal_join(X: CayleyLoop, *subloops) -> SubloopSet:
    members = set()
    for Y in subloops:
        members |= set(Y)
    return normal_closure(X, members)


# -- constructions ----------------------------------------------------------

def loop_from_group(G) -> CayleyLoop:
    return CayleyLoop(G.mul)


def cyclic_loop(n: int) -> CayleyLoop:
    ar = np.arange(n)
    return CayleyLoop((ar[:, None] + ar[None, :]) % n, _checked=True)


def direct_product(A: CayleyLoop, B: CayleyLoop) -> CayleyLoop:
    """``(a, b)`` has index ``a * |B| + b``."""
    na, nb = A.n, B.n
    a = np.arange(na * nb) // nb
    b = np.arange(na * nb) % nb
    return CayleyLoop(A.table[a[:, None], a[None, :]] * nb + B.table[b[:, None], b[None, :]],
                      _checked=True)


def opposite(X: CayleyLoop) -> CayleyLoop:
    return CayleyLoop(X.table.T, _checked=True)


def relabel(X: CayleyLoop, order: Sequence[int]) -> CayleyLoop:
    """Rename ``order[i]`` to ``i``; ``order[0]`` must be 0."""
    order = np.asarray(order, dtype=np.intp)
    sigma = np.empty_like(order)
    sigma[order] = np.arange(len(order))
    return CayleyLoop(sigma[X.table[np.ix_(order, order)]], _checked=True)


# -- isomorphism -------------------------------------------------------------

def element_invariants(X: CayleyLoop) -> list[tuple]:
    """Per-element invariants preserved by isomorphisms."""
    T = X.table
    out = []
    bol = X.bol
    for x in range(X.n):
        inv = (right_translation(X, x).cycle_type(), left_translation(X, x).cycle_type())
        if bol:
            inv = (element_order(X, x),) + inv
        sq = int(T[x, x])
        inv += ((right_translation(X, sq).cycle_type(), x == sq),)
        out.append(inv)
    return out


def _closure_labelling(T: list[list[int]], gens: Sequence[int], n: int):
    """Labels elements in the order a fixed product schedule discovers them."""
    labels = [0]
    pos = {0: 0}
    for g in gens:
        if g not in pos:
            pos[g] = len(labels)
            labels.append(g)
    i = 0
    while i < len(labels):
        a = labels[i]
        for j in range(i + 1):
            b = labels[j]
            for c in (T[a][b], T[b][a]):
                if c not in pos:
                    pos[c] = len(labels)
                    labels.append(c)
        i += 1
    return labels


def _closure_with(T, members: tuple, x: int) -> tuple:
    """Members of the subloop generated by a subloop and one more element.

    ``T`` is the table as nested lists for small loops, an array otherwise.
    """
    if isinstance(T, list):
        seen = set(members)
        seen.add(x)
        out = list(members) + [x]
        i = 0
        while i < len(out):
            a = out[i]
            row = T[a]
            for j in range(i + 1):
                b = out[j]
                for c in (row[b], T[b][a]):
                    if c not in seen:
                        seen.add(c)
                        out.append(c)
            i += 1
        return tuple(sorted(out))
    inside = np.zeros(T.shape[0], dtype=bool)
    inside[list(members)] = True
    inside[x] = True
    cur = np.nonzero(inside)[0]
    while True:
        prods = T[np.ix_(cur, cur)].ravel()
        inside[prods] = True
        nxt = np.nonzero(inside)[0]
        if len(nxt) == len(cur):
            return tuple(nxt.tolist())
        cur = nxt


def _generating_tuples(X: CayleyLoop, invariants=None, first_only: bool = False
                       ) -> tuple[int, list[tuple[int, ...]]]:
    """Minimal generator count d and all ordered d-tuples generating X.

    Only tuples whose invariant sequence is lexicographically least among
    generating tuples are kept; this is an isomorphism-invariant restriction.
    Tuples are searched depth first in lexicographic order; an element lying
    in the subloop generated by the earlier entries is skipped, since such a
    tuple could be shortened.
    """
    n = X.n
    if n == 1:
        return 0, [()]
    if invariants is None:
        invariants = element_invariants(X)
    T = X.table.tolist() if n <= 32 else X.table
    classes = sorted(set(invariants))
    rank = {c: i for i, c in enumerate(classes)}
    r = [rank[invariants[x]] for x in range(n)]
    elems = sorted(range(1, n), key=lambda x: (r[x], x))
    cache: dict = {}

    def closure(members, x):
        key = (members, x)
        out = cache.get(key)
        if out is None:
            out = cache[key] = _closure_with(T, members, x)
        return out

    d = 1
    while True:
        best_key = None
        best: list = []

        def rec(prefix, members, key):
            nonlocal best_key
            depth = len(prefix)
            for x in elems:
                if x in members:
                    continue
                k = key + (r[x],)
                if best_key is not None and k > best_key[: depth + 1]:
                    break           # elems are sorted by rank, so every later key is larger too
                sub = closure(members, x)
                if depth + 1 == d:
                    if len(sub) == n:
                        if best_key is None or k < best_key:
                            best_key = k
                            best.clear()
                        best.append(prefix + (x,))
                        if first_only:
                            return True
                elif len(sub) < n:
                    if rec(prefix + (x,), sub, k):
                        return True
            return False

        rec((), (0,), ())
        if best:
            return d, best
        d += 1


def canonical_form(X: CayleyLoop) -> CayleyLoop:
    """Least table over the relabellings induced by minimal generating tuples."""
    return canonical_form_with_labels(X)[0]


def canonical_form_with_labels(X: CayleyLoop) -> tuple[CayleyLoop, list[int]]:
    n = X.n
    _, tuples = _generating_tuples(X)
    T = X.table.tolist()
    best = None
    best_labels = None
    for tup in tuples:
        labels = _closure_labelling(T, tup, n)
        key = relabel(X, labels).key
        if best is None or key < best:
            best, best_labels = key, labels
    return relabel(X, best_labels), best_labels


def iter_isomorphisms(X1: CayleyLoop, X2: CayleyLoop) -> Iterator[LoopHom]:
    """Every isomorphism X1 -> X2."""
    if X1.n != X2.n or X1.bol != X2.bol:
        return
    inv1, inv2 = element_invariants(X1), element_invariants(X2)
    if sorted(inv1) != sorted(inv2):
        return
    n = X1.n
    _, tuples = _generating_tuples(X1, inv1, first_only=True)
    gens = tuples[0]
    T1 = X1.table.tolist()
    T2 = X2.table.tolist()
    labels = _closure_labelling(T1, gens, n)
    cands = [[y for y in range(1, n) if inv2[y] == inv1[g]] for g in gens]
    for images in itertools.product(*cands):
        if len(set(images)) != len(images):
            continue
        f = _extend_by_schedule(T1, T2, labels, dict(zip(gens, images)), n)
        if f is not None:
            yield LoopHom(X1, X2, f)


def _extend_by_schedule(T1, T2, labels, seed, n):
    f = [-1] * n
    f[0] = 0
    used = {0}
    for g, y in seed.items():
        if f[g] == -1:
            if y in used:
                return None
            f[g] = y
            used.add(y)
        elif f[g] != y:
            return None
    for i in range(len(labels)):
        a = labels[i]
        for j in range(i + 1):
            b = labels[j]
            for c, d in ((T1[a][b], T2[f[a]][f[b]]), (T1[b][a], T2[f[b]][f[a]])):
                if f[c] == -1:
                    if d in used:
                        return None
                    f[c] = d
                    used.add(d)
                elif f[c] != d:
                    return None
    fa = np.asarray(f)
    if not np.array_equal(fa[np.asarray(T1)], np.asarray(T2)[fa[:, None], fa[None, :]]):
        return None
    return f


def loops_isomorphic(X1: CayleyLoop, X2: CayleyLoop) -> LoopHom | None:
    return next(iter_isomorphisms(X1, X2), None)


def automorphisms(X: CayleyLoop) -> list[LoopHom]:
    return list(iter_isomorphisms(X, X))
