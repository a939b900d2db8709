"""Exhaustive generation of small loops, isomorph rejection, and corpus files.

Two search strategies live here:

* ``latin_squares`` -- plain row-major completion of reduced Latin squares,
  used for general loops and as the unpruned reference;
* ``bol_tables`` -- column-by-column completion where each finished column is
  a right translation, and the Bol identity in its translation form
  ``R(a)R(b)R(a) = R((a∘b)∘a)`` is checked (and, in forcing mode, used to fill
  further columns) as soon as its operand columns exist.
"""
from __future__ import annotations

import hashlib
import json
import os
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

from . import __version__
from .errors import BoundExceeded, ManifestMismatch
from .loop import (CayleyLoop, canonical_form, element_invariants, has_aip, is_bol,
                   loops_isomorphic, read_loop)

PREDICATES = ("loop", "bol", "bruck", "bol+ar")
DEFAULT_BOUNDS = {"loop": 8, "bol": 16, "bruck": 16, "bol+ar": 16}


@dataclass(frozen=True)
class EnumerationTask:
    order: int
    predicate: str = "loop"
    iso_mode: str = "canonical"      # or "pairwise"
    prune: bool = True               # False: complete every Latin square, filter afterwards
    force: bool = True               # Bol search: fill columns implied by the identity
    depth: int = 0                   # >0: split the search on the first column across workers
    workers: int = 1
    nonassociative: bool = False

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be positive")
        if self.predicate not in PREDICATES:
            raise ValueError(f"unknown predicate {self.predicate!r}")
        if self.iso_mode not in ("canonical", "pairwise"):
            raise ValueError(f"unknown isomorph-rejection mode {self.iso_mode!r}")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


# -- raw search -----------------------------------------------------------

def latin_squares(n: int) -> Iterator[list[list[int]]]:
    """Every Latin square with identity row and column 0, in lexicographic order."""
    if n == 1:
        yield [[0]]
        return
    T = [[-1] * n for _ in range(n)]
    for i in range(n):
        T[0][i] = i
        T[i][0] = i
    full = (1 << n) - 1
    row_used = [1 << i for i in range(n)]
    col_used = [1 << i for i in range(n)]
    row_used[0] = col_used[0] = full
    cells = [(r, c) for r in range(1, n) for c in range(1, n)]

    def rec(k):
        if k == len(cells):
            yield [row[:] for row in T]
            return
        r, c = cells[k]
        free = full & ~(row_used[r] | col_used[c])
        v = 0
        while free:
            if free & 1:
                bit = 1 << v
                T[r][c] = v
                row_used[r] |= bit
                col_used[c] |= bit
                yield from rec(k + 1)
                row_used[r] &= ~bit
                col_used[c] &= ~bit
            free >>= 1
            v += 1
        T[r][c] = -1

    yield from rec(0)


def _column_candidates(n: int, x: int, row_used: list[int]) -> Iterator[tuple[int, ...]]:
    """Columns (right translations) for ``x`` compatible with the rows filled so far."""
    col = [0] * n
    col[0] = x
    used = 1 << x

    def rec(z, used):
        if z == n:
            yield tuple(col)
            return
        free = ~(row_used[z] | used) & ((1 << n) - 1)
        v = 0
        while free:
            if free & 1:
                col[z] = v
                yield from rec(z + 1, used | (1 << v))
            free >>= 1
            v += 1

    yield from rec(1, used)


def _bol_close(cols: list, row_used: list[int], new: list[int], force: bool) -> bool:
    """Check (and optionally propagate) R(a)R(b)R(a) = R((a∘b)∘a) for pairs touching ``new``."""
    queue = list(new)
    done = [x for x in range(len(cols)) if cols[x] is not None and x not in queue]
    while queue:
        a = queue.pop(0)
        Ra = cols[a]
        partners = done + [a]
        for b in partners:
            Rb = cols[b]
            for p, q in ((Ra, Rb), (Rb, Ra)):
                P = tuple(p[q[p[z]]] for z in range(len(p)))
                w = P[0]
                Rw = cols[w]
                if Rw is not None:
                    if Rw != P:
                        return False
                elif force:
                    for z, v in enumerate(P):
                        if row_used[z] >> v & 1:
                            return False
                    cols[w] = P
                    for z, v in enumerate(P):
                        row_used[z] |= 1 << v
                    queue.append(w)
                else:
                    # operands determined but the target column is open: its cells must stay free
                    for z, v in enumerate(P):
                        if row_used[z] >> v & 1:
                            return False
        done.append(a)
    return True


def _bol_search(n: int, force: bool, first: tuple | None = None) -> Iterator[list[tuple]]:
    cols: list = [None] * n
    cols[0] = tuple(range(n))
    row_used = [1 << z for z in range(n)]

    def place(cols, row_used, x, col):
        cols = cols[:]
        row_used = row_used[:]
        cols[x] = col
        for z, v in enumerate(col):
            row_used[z] |= 1 << v
        if _bol_close(cols, row_used, [x], force):
            return cols, row_used
        return None

    def rec(cols, row_used):
        try:
            x = cols.index(None)
        except ValueError:
            yield cols
            return
        for col in _column_candidates(n, x, row_used):
            nxt = place(cols, row_used, x, col)
            if nxt is not None:
                yield from rec(*nxt)

    if n == 1:
        yield cols
        return
    if first is not None:
        nxt = place(cols, row_used, 1, first)
        if nxt is not None:
            yield from rec(*nxt)
        return
    yield from rec(cols, row_used)


def bol_tables(n: int, force: bool = True) -> Iterator[np.ndarray]:
    """Every Bol loop table of order n (labelled, identity at 0)."""
    for cols in _bol_search(n, force):
        yield np.array(cols, dtype=np.intp).T


def _first_columns(n: int) -> list[tuple]:
    row_used = [1 << z for z in range(n)]
    return list(_column_candidates(n, 1, row_used)) if n > 1 else []


# -- isomorph rejection -------------------------------------------------------

class _Dedup:
    """Collects loops up to isomorphism, either by canonical form or pairwise tests."""

    def __init__(self, mode: str):
        self.mode = mode
        self.buckets: dict = defaultdict(list)

    def add(self, X: CayleyLoop) -> bool:
        sig = tuple(sorted(element_invariants(X)))
        bucket = self.buckets[sig]
        if self.mode == "pairwise":
            if any(loops_isomorphic(X, Y) is not None for Y in bucket):
                return False
            bucket.append(X)
            return True
        C = canonical_form(X)
        if any(C == Y for Y in bucket):
            return False
        bucket.append(C)
        return True

    def result(self) -> list[CayleyLoop]:
        loops = [X for b in self.buckets.values() for X in b]
        return sorted((canonical_form(X) for X in loops), key=lambda X: (X.n, X.key))


def _accept(X: CayleyLoop, task: EnumerationTask) -> bool:
    if task.nonassociative and X.associative:
        return False
    if task.predicate == "loop":
        return True
    if not is_bol(X):
        return False
    if task.predicate == "bruck":
        return has_aip(X)
    if task.predicate == "bol+ar":
        from .structure import is_ar_loop
        return is_ar_loop(X)
    return True


def _raw_tables(task: EnumerationTask, first=None) -> Iterator[np.ndarray]:
    n = task.order
    if task.predicate == "loop" or not task.prune:
        for T in latin_squares(n):
            yield np.array(T, dtype=np.intp)
    elif first is None:
        yield from bol_tables(n, task.force)
    else:
        for cols in _bol_search(n, task.force, first):
            yield np.array(cols, dtype=np.intp).T


def _run_partition(args):
    task, first = args
    dedup = _Dedup(task.iso_mode)
    for T in _raw_tables(task, first):
        X = CayleyLoop(T, _checked=True)
        if _accept(X, task):
            dedup.add(X)
    return [X.table.tolist() for X in dedup.result()]


def enumerate_loops(task: EnumerationTask, bound: int | None = None) -> list[CayleyLoop]:
    """Canonical representatives of every isomorphism class satisfying the task predicate."""
    bound = DEFAULT_BOUNDS[task.predicate] if bound is None else bound
    if task.order > bound:
        raise BoundExceeded(f"order {task.order} exceeds bound {bound} for {task.predicate!r}")
    parallel = task.depth > 0 and task.predicate != "loop" and task.prune and task.order > 1
    if not parallel:
        tables = _run_partition((task, None))
    else:
        jobs = [(task, first) for first in _first_columns(task.order)]
        if task.workers > 1:
            with ProcessPoolExecutor(task.workers) as pool:
                parts = list(pool.map(_run_partition, jobs, chunksize=8))
        else:
            parts = [_run_partition(j) for j in jobs]
        tables = [t for part in parts for t in part]
    dedup = _Dedup(task.iso_mode)
    for t in tables:
        dedup.add(CayleyLoop(t, _checked=True))
    return dedup.result()


def enumerate_glauberman(bound: int = 81):
    """Glauberman loops over the built-in odd groups; see ``library.enumerate_glauberman``."""
    from .library import enumerate_glauberman as run
    return run(bound)


def count_classes_naive(n: int) -> int:
    """Reference count: every reduced Latin square, pairwise isomorphism only."""
    reps: list[CayleyLoop] = []
    for T in latin_squares(n):
        X = CayleyLoop(T, _checked=True)
        if all(loops_isomorphic(X, Y) is None for Y in reps):
            reps.append(X)
    return len(reps)


# -- corpus files -------------------------------------------------------------

def _digest(text: str) -> str:
    return hashlib.sha256(text.encode("ascii")).hexdigest()


def corpus_write(loops: Iterable[CayleyLoop], directory, predicate: str = "loop") -> dict:
    """One ``<order>/<hash>.loop`` file per loop plus ``manifest.json``."""
    root = Path(directory)
    root.mkdir(parents=True, exist_ok=True)
    files = {}
    counts: dict[int, int] = defaultdict(int)
    for X in loops:
        text = X.dumps()
        h = _digest(text)
        rel = f"{X.n}/{h[:16]}.loop"
        (root / str(X.n)).mkdir(exist_ok=True)
        with open(root / rel, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
        files[rel] = h
        counts[X.n] += 1
    manifest = {
        "predicate": predicate,
        "count": len(files),
        "tool_version": __version__,
        "orders": [{"order": n, "predicate": predicate, "count": c, "tool_version": __version__}
                   for n, c in sorted(counts.items())],
        "files": dict(sorted(files.items())),
    }
    if len(counts) == 1:
        manifest["order"] = next(iter(counts))
    with open(root / "manifest.json", "w", encoding="ascii", newline="\n") as fh:
        json.dump(manifest, fh, indent=1, sort_keys=True)
        fh.write("\n")
    return manifest


def corpus_read(directory) -> list[CayleyLoop]:
    root = Path(directory)
    with open(root / "manifest.json", encoding="ascii") as fh:
        manifest = json.load(fh)
    out = []
    for rel, h in manifest["files"].items():
        with open(root / rel, encoding="ascii") as fh:
            text = fh.read()
        if _digest(text) != h:
            raise ManifestMismatch(f"{rel} does not match its manifest hash")
        out.append(read_loop(root / rel))
    on_disk = sorted(str(p.relative_to(root)).replace(os.sep, "/") for p in root.glob("*/*.loop"))
    if on_disk != sorted(manifest["files"]):
        raise ManifestMismatch("loop files on disk differ from the manifest")
    return out
