"""Exhaustive k-partite k-clique search engines.

Two branch-and-bound engines plus a brute-force oracle:

* ``kpkc_iter``: at the top ``prec_depth`` recursion levels the candidate
  vertices are sorted by ascending surviving-neighbour count (ties by vertex
  id), then iterated in that order, each vertex being dropped from the
  candidate set once its branch is exhausted.  Sorting doubles as a filter:
  a vertex no longer connected to every uncovered part other than its own is
  removed.  A filter pass that removed something triggers one more pass (and
  is repeated to a fixed point at the root); when a part drops to a single
  candidate the node re-sorts (even below the sorting depth), and when a part
  runs empty the node abandons its subtree immediately.
* ``findclique_iter``: classic smallest-part branching; every node selects a
  smallest surviving uncovered part (ties: lowest part index) and branches on
  each of its vertices in ascending id order.
* ``brute_iter`` / ``brute_cliques``: itertools.product over the parts,
  guarded by a candidate-count limit; the reference oracle.

All engines yield every k-clique exactly once, as a tuple of vertex ids in
ascending part order, and are fully deterministic for a given graph.  They
accept an optional monotonic-clock deadline and raise ``SearchTimeout`` when
it passes; ``has_kclique`` wraps this in a (status, witness) interface and
re-verifies any witness before returning it.

Recursion scratch (iteration-order buffers, per-part survivor counts, the
uncovered-part list) lives in one reusable slot per depth, so after the
search has once reached a given depth no further scratch objects are
allocated there; ``_Scratch.allocs`` counts slot creations for the debug
tests.  Transient Python int masks are not tracked.
"""

from __future__ import annotations

import itertools
import time
from typing import Iterator, List, Optional, Tuple

from .bitgraph import KPartiteGraph

Clique = Tuple[int, ...]


class SearchTimeout(Exception):
    """Raised inside an engine when its deadline passes."""


class BruteForceRefused(RuntimeError):
    """Raised when the brute-force candidate space exceeds the guard limit."""


class _Ctl:
    """Deadline bookkeeping shared by one search."""

    __slots__ = ("deadline", "ticks")

    def __init__(self, deadline: Optional[float]):
        self.deadline = deadline
        self.ticks = 0

    def tick(self) -> None:
        self.ticks += 1
        if (
            self.deadline is not None
            and self.ticks & 255 == 0
            and time.monotonic() > self.deadline
        ):
            raise SearchTimeout


class _Scratch:
    """Per-depth reusable recursion state (order buffer, counts, part list)."""

    __slots__ = ("k", "orders", "counts", "parts", "allocs")

    def __init__(self, k: int):
        self.k = k
        self.orders: List[List[int]] = []
        self.counts: List[List[int]] = []
        self.parts: List[List[int]] = []
        self.allocs = 0

    def level(self, depth: int) -> Tuple[List[int], List[int], List[int]]:
        while len(self.orders) <= depth:
            self.orders.append([])
            self.counts.append([0] * self.k)
            self.parts.append([])
            self.allocs += 1
        return self.orders[depth], self.counts[depth], self.parts[depth]


class _KpkcState:
    __slots__ = ("rows", "pov", "pmasks", "scratch", "ctl")

    def __init__(self, g: KPartiteGraph, deadline: Optional[float]):
        self.rows = [vs.bits for vs in g.adjacency]
        self.pov = g._part_of
        self.pmasks = g.part_masks
        self.scratch = _Scratch(g.k)
        self.ctl = _Ctl(deadline)

    def sort_filter(
        self,
        active: int,
        order: List[int],
        parts_left: List[int],
        counts: List[int],
    ) -> Tuple[int, bool, bool]:
        """One sort pass: drop vertices missing some uncovered part, then sort
        survivors by (surviving-neighbour count, id).  Returns the new active
        mask, whether anything was removed, and whether a part ran empty."""
        rows = self.rows
        pmasks = self.pmasks
        pov = self.pov
        kept: List[Tuple[int, int]] = []
        removed = False
        for v in order:
            if not (active >> v) & 1:
                continue
            row = rows[v] & active
            pv = pov[v]
            ok = True
            for p in parts_left:
                if p != pv and not (row & pmasks[p]):
                    ok = False
                    break
            if ok:
                kept.append((row.bit_count(), v))
            else:
                active ^= 1 << v
                removed = True
        kept.sort()
        order[:] = [v for _, v in kept]
        empty = False
        if removed:
            for p in parts_left:
                c = (active & pmasks[p]).bit_count()
                counts[p] = c
                if c == 0:
                    empty = True
        return active, removed, empty


def _kpkc_node(
    st: _KpkcState,
    active: int,
    order: List[int],
    parts_left: List[int],
    counts: List[int],
    budget: int,
    depth: int,
) -> Iterator[Clique]:
    if not parts_left:
        yield ()
        return
    for p in parts_left:
        if counts[p] == 0:
            return
    if budget > 0:
        active, removed, empty = st.sort_filter(active, order, parts_left, counts)
        if empty:
            return
        if removed:
            while True:
                active, removed, empty = st.sort_filter(
                    active, order, parts_left, counts
                )
                if empty:
                    return
                if depth > 0 or not removed:
                    break
    rows = st.rows
    pov = st.pov
    pmasks = st.pmasks
    ctl = st.ctl
    i = 0
    while i < len(order):
        v = order[i]
        i += 1
        if not (active >> v) & 1:
            continue
        ctl.tick()
        pv = pov[v]
        child_active = active & rows[v]
        corder, ccounts, cparts = st.scratch.level(depth + 1)
        cparts.clear()
        dead = False
        for p in parts_left:
            if p == pv:
                continue
            c = (child_active & pmasks[p]).bit_count()
            if c == 0:
                dead = True
                break
            ccounts[p] = c
            cparts.append(p)
        if not dead:
            corder[:] = [w for w in order if (child_active >> w) & 1]
            for sub in _kpkc_node(
                st, child_active, corder, cparts, ccounts, budget - 1, depth + 1
            ):
                yield (v,) + sub
        active ^= 1 << v
        counts[pv] -= 1
        if counts[pv] == 0:
            return
        if counts[pv] == 1:
            active, _, empty = st.sort_filter(active, order, parts_left, counts)
            if empty:
                return
            i = 0


def kpkc_iter(
    g: KPartiteGraph, prec_depth: int = 5, deadline: Optional[float] = None
) -> Iterator[Clique]:
    """Enumerate all k-cliques of g with the sort-by-neighbour-count engine."""
    st = _KpkcState(g, deadline)
    order, counts, parts = st.scratch.level(0)
    order[:] = range(g.n)
    parts[:] = range(g.k)
    sizes = g.part_sizes()
    for p in range(g.k):
        counts[p] = sizes[p]
    active = (1 << g.n) - 1
    for clique in _kpkc_node(st, active, order, parts, counts, prec_depth, 0):
        yield tuple(sorted(clique))


class _FcState:
    __slots__ = ("rows", "pmasks", "scratch", "ctl")

    def __init__(self, g: KPartiteGraph, deadline: Optional[float]):
        self.rows = [vs.bits for vs in g.adjacency]
        self.pmasks = g.part_masks
        self.scratch = _Scratch(g.k)
        self.ctl = _Ctl(deadline)


def _fc_node(
    st: _FcState,
    active: int,
    parts_left: List[int],
    counts: List[int],
    depth: int,
) -> Iterator[Clique]:
    if not parts_left:
        yield ()
        return
    best = parts_left[0]
    for p in parts_left:
        if counts[p] < counts[best]:
            best = p
    if counts[best] == 0:
        return
    rows = st.rows
    pmasks = st.pmasks
    ctl = st.ctl
    b = active & pmasks[best]
    while b:
        low = b & -b
        v = low.bit_length() - 1
        b ^= low
        ctl.tick()
        child_active = active & rows[v]
        _, ccounts, cparts = st.scratch.level(depth + 1)
        cparts.clear()
        dead = False
        for p in parts_left:
            if p == best:
                continue
            c = (child_active & pmasks[p]).bit_count()
            if c == 0:
                dead = True
                break
            ccounts[p] = c
            cparts.append(p)
        if not dead:
            for sub in _fc_node(st, child_active, cparts, ccounts, depth + 1):
                yield (v,) + sub


def findclique_iter(
    g: KPartiteGraph, deadline: Optional[float] = None
) -> Iterator[Clique]:
    """Enumerate all k-cliques of g with smallest-part branching."""
    st = _FcState(g, deadline)
    _, counts, parts = st.scratch.level(0)
    parts[:] = range(g.k)
    sizes = g.part_sizes()
    for p in range(g.k):
        counts[p] = sizes[p]
    active = (1 << g.n) - 1
    for clique in _fc_node(st, active, parts, counts, 0):
        yield tuple(sorted(clique))


def brute_iter(
    g: KPartiteGraph, deadline: Optional[float] = None, limit: int = 10**7
) -> Iterator[Clique]:
    """Check every one-vertex-per-part tuple; refuse if there are too many."""
    sizes = g.part_sizes()
    total = 1
    for s in sizes:
        total *= s
    if total > limit:
        raise BruteForceRefused(
            f"{total} candidate tuples exceed the brute-force limit {limit}"
        )
    rows = [vs.bits for vs in g.adjacency]
    ctl = _Ctl(deadline)
    k = g.k
    for combo in itertools.product(*(g.part_members(p) for p in range(k))):
        ctl.tick()
        ok = True
        for a in range(k - 1):
            ra = rows[combo[a]]
            for bb in range(a + 1, k):
                if not (ra >> combo[bb]) & 1:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            yield combo


def brute_cliques(g: KPartiteGraph, limit: int = 10**7) -> List[Clique]:
    return list(brute_iter(g, limit=limit))


_ENGINES = {
    "kpkc": lambda g, deadline: kpkc_iter(g, deadline=deadline),
    "findclique": lambda g, deadline: findclique_iter(g, deadline=deadline),
    "brute": lambda g, deadline: brute_iter(g, deadline=deadline),
}


def clique_engine(
    g: KPartiteGraph, algorithm: str, deadline: Optional[float] = None
) -> Iterator[Clique]:
    try:
        factory = _ENGINES[algorithm]
    except KeyError:
        raise ValueError(
            f"unknown algorithm {algorithm!r}, expected one of {sorted(_ENGINES)}"
        ) from None
    return factory(g, deadline)


def _verify_witness(g: KPartiteGraph, clique: Clique) -> None:
    if len(clique) != g.k:
        raise RuntimeError(f"witness {clique} has {len(clique)} vertices, k={g.k}")
    if [g.part_of(v) for v in clique] != list(range(g.k)):
        raise RuntimeError(f"witness {clique} does not cover each part once")
    for a in range(g.k):
        for bb in range(a + 1, g.k):
            if not g.are_adjacent(clique[a], clique[bb]):
                raise RuntimeError(
                    f"witness {clique} misses edge ({clique[a]},{clique[bb]})"
                )


def has_kclique(
    g: KPartiteGraph,
    algorithm: str = "kpkc",
    timeout: Optional[float] = None,
) -> Tuple[str, Optional[Clique]]:
    """Search for one k-clique.

    Returns ("clique", witness) with a re-verified witness, ("none", None) if
    the search space was exhausted, or ("timeout", None).
    """
    deadline = time.monotonic() + timeout if timeout is not None else None
    it = clique_engine(g, algorithm, deadline)
    try:
        clique = next(it)
    except StopIteration:
        return ("none", None)
    except SearchTimeout:
        return ("timeout", None)
    _verify_witness(g, clique)
    return ("clique", clique)
