"""From an acyclic rank-3 chirotope on 10 elements to a k-partite graph whose
k-clique-freeness certifies the optimal colored Tverberg property.

Overview.  Fix a chirotope chi of 10 points in strong general position.  A
*colour partition* splits the 10 elements into classes with size profile
(3,3,3,1), (3,3,2,2) or (2,2,2,2,2); there are 2800 + 6300 + 945 = 10045 of
them.  A *Tverberg partition* is a partition into four pieces (3+3+3+1 or
3+3+2+2) whose hulls share a point, and it is *rainbow* for a colouring when
every piece meets every colour class at most once.  The certified property:
every colouring admits a rainbow Tverberg partition.

The 3+3+3+1 partitions are determined by chi alone (a singleton inside three
triangles).  The 3+3+2+2 partitions hinge on where the crossing point y of a
valid quad (two crossing 2-subsets, each line with 2..4 of the remaining six
elements on its positive side) sits relative to the other six points, and
that is not determined by chi.  What chi does determine is a lot of partial
information about the extension signs chi(i, j, y):

* if {i,j} is one of the quad's lines, chi(i,j,y) = 0;
* if j is a quad element, substitute: chi(i,a,y) = chi(a,b,i),
  chi(i,b,y) = -chi(a,b,i), chi(i,c,y) = chi(c,d,i), chi(i,d,y) = -chi(c,d,i);
* for i, j off the quad the *region* of h is the sign pair
  (chi(a,b,h), chi(c,d,h)); when i and j sit in neighbouring regions (one
  sign flips) the sign is forced: agreeing on ab,
  chi(i,j,y) = chi(c,d,a)*chi(c,d,j)*chi(a,b,i); agreeing on cd,
  chi(i,j,y) = chi(a,b,c)*chi(a,b,j)*chi(c,d,i);
* for i, j in opposite regions (both signs flip) the sign is genuinely free,
  and for i, j in the same region it is unknown (and never needed).

An *orientation vertex* of a quad is an assignment of signs to its
opposite-region pairs that survives every constraint the chirotope imposes:

* forcing via the quad lines: chi(i,j,a) = chi(i,j,b) forces
  chi(i,j,y) = chi(i,j,a), and likewise with c, d;
* forcing via a third element k neighbouring both i and j (regions of i, j, k
  pairwise distinct, labelled so that k agrees with i on the ab line): with
  t = -chi(a,b,c)*chi(c,d,i)*chi(a,b,i) (the value chi(i,j,y) takes exactly
  when y is inside the triangle ijk), chi(i,j,k) != t forces
  chi(i,j,y) = -t;
* a conditional constraint for k in the region opposite to a same-region
  pair j, k: if chi(i,j,y) != chi(i,k,y) then chi(i,j,y) = chi(i,j,k);
* a transfer constraint for two opposite-region pairs (i1,j1), (i2,j2) with
  i1, i2 in one region, j1, j2 in the other, when both pairs separate a quad
  line (chi(i,j,a) != chi(i,j,b), or the same with c, d): if
  chi(i1,j1,i2) = chi(i1,j1,j2) = -chi(i1,j1,y) then
  chi(i2,j2,y) = chi(i1,j1,y).

All instantiations over all orderings and both line labellings are applied.
Real crossing points always survive, so the enumeration over-approximates
the geometric possibilities; for the convex-position chirotope it yields 740
vertices over the 70 valid quads, at most 20 per quad.

Whether y lies in a triangle {e,f,g} of off-quad elements is decided by the
regions: no opposite pair among e,f,g means no; a same-region pair j,k with
i opposite means y inside iff chi(i,j,y) != chi(i,k,y); three pairwise
distinct regions (opposite pair i,j plus neighbour k, labelled as above)
means y inside iff chi(i,j,y) = t.  This yields the 3+3+2+2 partitions
available at a given orientation vertex.

The graph H(chi): one part per valid quad (its orientation vertices; empty
parts are kept) plus one final part holding all 10045 colourings.  A quad
vertex and a colouring are adjacent when no Tverberg partition visible at
that vertex (the chi-determined 3+3+3+1 set plus the vertex's 3+3+2+2 set)
is rainbow for the colouring.  Two quad vertices are adjacent unless their
quads share a line and the sign data of the two crossing points contradicts
the following transfer: labelling the shared line (a,b) and the other lines
(c,d), (c',d') with chi(a,b,c) = chi(a,b,c'), for every pair (i,j) outside
{a,b,c',d'} with chi(a,b,i) = chi(a,b,c) and chi(a,b,j) = chi(a,b,d), if
chi(i,j,y) is determined and differs from chi(c',d',y) then both
chi(i,j,y') and chi(c,d,y') must equal -chi(c',d',y) whenever determined
(and symmetrically with the two quads swapped).  Undetermined signs never
block an edge, which keeps H a supergraph of the true compatibility graph;
a k-clique-free H therefore certifies the property for every realization.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from .bitgraph import KPartiteGraph
from .chirotope import Chirotope, Quad, region, valid_quads
from .engines import has_kclique

Pieces = Tuple[Tuple[int, ...], ...]

_PAIR_BIT = {pr: 1 << idx for idx, pr in enumerate(combinations(range(10), 2))}

_PROFILES = ((3, 3, 3, 1), (3, 3, 2, 2), (2, 2, 2, 2, 2))


def _canon_pieces(pieces: Sequence[Sequence[int]]) -> Pieces:
    return tuple(
        sorted((tuple(sorted(p)) for p in pieces), key=lambda t: (-len(t), t))
    )


def _pairs_mask(pieces: Pieces) -> int:
    mask = 0
    for piece in pieces:
        for pr in combinations(piece, 2):
            mask |= _PAIR_BIT[pr]
    return mask


@dataclass(frozen=True)
class ColorPartition:
    """A colouring of the 10 elements, classes canonical (size desc, min)."""

    classes: Pieces

    @classmethod
    def make(cls, classes: Sequence[Sequence[int]]) -> "ColorPartition":
        canon = _canon_pieces(classes)
        elements = sorted(e for c in canon for e in c)
        if elements != list(range(10)):
            raise ValueError("classes must partition 0..9")
        profile = tuple(len(c) for c in canon)
        if profile not in _PROFILES:
            raise ValueError(f"size profile {profile} not admissible")
        return cls(canon)

    def mask(self) -> int:
        return _pairs_mask(self.classes)


def _partitions_into(elements: Tuple[int, ...], sizes: Tuple[int, ...]):
    if not sizes:
        yield ()
        return
    anchor, rest = elements[0], elements[1:]
    seen_sizes = set()
    for pos, s in enumerate(sizes):
        if s in seen_sizes:
            continue
        seen_sizes.add(s)
        rem = sizes[:pos] + sizes[pos + 1 :]
        for mates in combinations(rest, s - 1):
            left = tuple(e for e in rest if e not in mates)
            head = (anchor,) + mates
            for tail in _partitions_into(left, rem):
                yield (head,) + tail


def enumerate_color_partitions() -> List[ColorPartition]:
    """All 10045 colourings, in a fixed deterministic order."""
    out = []
    for profile in _PROFILES:
        for parts in _partitions_into(tuple(range(10)), profile):
            out.append(ColorPartition(_canon_pieces(parts)))
    out.sort(key=lambda cp: cp.classes)
    return out


def census() -> Dict[Tuple[int, ...], int]:
    counts: Dict[Tuple[int, ...], int] = {}
    for cp in enumerate_color_partitions():
        prof = tuple(len(c) for c in cp.classes)
        counts[prof] = counts.get(prof, 0) + 1
    return counts


@dataclass(frozen=True)
class TverbergPartition:
    """Four pieces with a common hull point; quad set for 3+3+2+2 shape."""

    pieces: Pieces
    quad: Optional[Quad] = None

    def mask(self) -> int:
        return _pairs_mask(self.pieces)

    def is_rainbow(self, cp: ColorPartition) -> bool:
        return self.mask() & cp.mask() == 0


def is_rainbow(tv: TverbergPartition, cp: ColorPartition) -> bool:
    """Every piece of tv meets every class of cp at most once."""
    return tv.is_rainbow(cp)


def tverberg_3331(chi: Chirotope) -> List[TverbergPartition]:
    """All 3+3+3+1 Tverberg partitions; fully determined by the chirotope
    (singleton p inside a triangle {e,f,g} iff the three signs
    chi(e,f,p), chi(f,g,p), chi(g,e,p) coincide)."""
    sgn = chi.sign

    def inside(p, t):
        e, f, g = t
        s = sgn(e, f, p)
        return s != 0 and s == sgn(f, g, p) == sgn(g, e, p)

    out = []
    n = chi.n
    for p in range(n):
        rest = tuple(h for h in range(n) if h != p)
        for t1m in combinations(rest[1:], 2):
            t1 = (rest[0],) + t1m
            if not inside(p, t1):
                continue
            left = tuple(h for h in rest[1:] if h not in t1m)
            for t2m in combinations(left[1:], 2):
                t2 = (left[0],) + t2m
                if not inside(p, t2):
                    continue
                t3 = tuple(h for h in left[1:] if h not in t2m)
                if inside(p, t3):
                    out.append(
                        TverbergPartition(_canon_pieces([t1, t2, t3, (p,)]))
                    )
    return out


class OrientationVertex:
    """One consistent sign assignment chi(i,j,y) for a quad's opposite pairs.

    ``pairs`` are the opposite-region pairs (i < j, ascending); ``signs``
    aligns with them.  ``sig(i, j)`` gives the stored sign in either order.
    """

    __slots__ = ("quad", "pairs", "signs", "_lookup")

    def __init__(self, quad: Quad, pairs: Tuple[Tuple[int, int], ...], signs: Tuple[int, ...]):
        self.quad = quad
        self.pairs = pairs
        self.signs = signs
        self._lookup = dict(zip(pairs, signs))

    def sig(self, i: int, j: int) -> Optional[int]:
        if i < j:
            s = self._lookup.get((i, j))
            return s
        s = self._lookup.get((j, i))
        return None if s is None else -s

    def __eq__(self, other):
        return (
            isinstance(other, OrientationVertex)
            and self.quad == other.quad
            and self.pairs == other.pairs
            and self.signs == other.signs
        )

    def __hash__(self):
        return hash((self.quad, self.pairs, self.signs))

    def __repr__(self):
        body = ", ".join(
            f"({i},{j}):{'+' if s == 1 else '-'}"
            for (i, j), s in zip(self.pairs, self.signs)
        )
        return f"OrientationVertex({self.quad}, {{{body}}})"


def determined_sign(chi: Chirotope, v: OrientationVertex, i: int, j: int) -> Optional[int]:
    """chi(i, j, y) for the crossing point y of v's quad, or None if unknown
    (same-region pair).  Zero exactly on the quad's own lines."""
    if i == j:
        raise ValueError("need distinct elements")
    a, b, c, d = v.quad
    if {i, j} == {a, b} or {i, j} == {c, d}:
        return 0
    sgn = chi.sign
    if j == a:
        return sgn(a, b, i)
    if j == b:
        return -sgn(a, b, i)
    if j == c:
        return sgn(c, d, i)
    if j == d:
        return -sgn(c, d, i)
    if i in (a, b, c, d):
        s = determined_sign(chi, v, j, i)
        return None if s is None else -s
    ri = region(chi, v.quad, i)
    rj = region(chi, v.quad, j)
    diff = (ri[0] != rj[0]) + (ri[1] != rj[1])
    if diff == 0:
        return None
    if diff == 2:
        return v.sig(i, j)
    if ri[0] == rj[0]:
        return sgn(c, d, a) * sgn(c, d, j) * sgn(a, b, i)
    return sgn(a, b, c) * sgn(a, b, j) * sgn(c, d, i)


def _neighbor_force_value(chi, quad, regs, i, j, k) -> Optional[Tuple[int, int]]:
    """For regions of i, j, k pairwise distinct with (i, j) opposite, the
    triangle-containment value t of chi(i,j,y) per the line where k agrees
    with i; None when the labelling does not fit.  Returns (t, chi(i,j,k))."""
    a, b, c, d = quad
    ri, rj, rk = regs[i], regs[j], regs[k]
    if ri[0] == rk[0] and rj[1] == rk[1] and ri[0] != rj[0] and ri[1] != rj[1]:
        t = -chi.sign(a, b, c) * chi.sign(c, d, i) * chi.sign(a, b, i)
        return t, chi.sign(i, j, k)
    if ri[1] == rk[1] and rj[0] == rk[0] and ri[0] != rj[0] and ri[1] != rj[1]:
        t = -chi.sign(c, d, a) * chi.sign(a, b, i) * chi.sign(c, d, i)
        return t, chi.sign(i, j, k)
    return None


def enumerate_orientation_vertices(
    chi: Chirotope, quad: Quad, _drop: FrozenSet[str] = frozenset()
) -> List[OrientationVertex]:
    """All orientation vertices of the quad, sign-vector lexicographic.

    ``_drop`` disables constraint families for self-tests only: "line"
    (signs forced by a quad line whose endpoints fall on one side of the
    pair), "triple" (forcings and consistency checks coming from a third
    off-quad point), "transfer" (signs propagated between pairs that
    straddle the same quad line).  The test suite uses it to confirm
    every family actually prunes something; production callers must not.
    """
    a, b, c, d = quad
    others = quad.others(chi.n)
    regs = {h: region(chi, quad, h) for h in others}
    for h in others:
        if 0 in regs[h]:
            raise ValueError(f"element {h} lies on a line of quad {quad}")
    opp_pairs = tuple(
        (i, j)
        for i, j in combinations(others, 2)
        if regs[i][0] != regs[j][0] and regs[i][1] != regs[j][1]
    )

    # unconditional forcings
    forced: Dict[Tuple[int, int], int] = {}

    def force(pr, s) -> bool:
        if forced.get(pr, s) != s:
            return False
        forced[pr] = s
        return True

    if "line" not in _drop:
        for i, j in opp_pairs:
            sa, sb = chi.sign(i, j, a), chi.sign(i, j, b)
            if sa == sb and not force((i, j), sa):
                return []
            sc, sd = chi.sign(i, j, c), chi.sign(i, j, d)
            if sc == sd and not force((i, j), sc):
                return []
    if "triple" not in _drop:
        for i, j in opp_pairs:
            for k in others:
                if k == i or k == j:
                    continue
                for (x, y) in ((i, j), (j, i)):
                    got = _neighbor_force_value(chi, quad, regs, x, y, k)
                    if got is None:
                        continue
                    t, chi_ijk = got
                    if chi_ijk != t:
                        # chi(x,y,y_point) forced to -t
                        s = -t if x < y else t
                        if not force((min(x, y), max(x, y)), s):
                            return []

    # conditional constraints
    same_far = []  # (i, j, k, chi(i,j,k)): j,k same region, i opposite
    if "triple" not in _drop:
        for j, k in combinations(others, 2):
            if regs[j] != regs[k]:
                continue
            for i in others:
                if regs[i] == (-regs[j][0], -regs[j][1]):
                    same_far.append((i, j, k, chi.sign(i, j, k)))

    transfer_set = set()  # (p1, flip1, p2, flip2, chi(x1,y1,x2), chi(x1,y1,y2))

    def sep(i, j, u, w):
        return chi.sign(i, j, u) != chi.sign(i, j, w)

    for (i1, j1) in opp_pairs if "transfer" not in _drop else ():
        for (x1, y1) in ((i1, j1), (j1, i1)):
            if not (sep(x1, y1, a, b) or sep(x1, y1, c, d)):
                continue
            for (i2, j2) in opp_pairs:
                if (i2, j2) == (i1, j1):
                    continue
                for (x2, y2) in ((i2, j2), (j2, i2)):
                    if regs[x2] != regs[x1] or len({x1, y1, x2, y2}) != 4:
                        continue
                    if not (
                        (sep(x1, y1, a, b) and sep(x2, y2, a, b))
                        or (sep(x1, y1, c, d) and sep(x2, y2, c, d))
                    ):
                        continue
                    transfer_set.add(
                        (
                            (min(x1, y1), max(x1, y1)),
                            1 if x1 < y1 else -1,
                            (min(x2, y2), max(x2, y2)),
                            1 if x2 < y2 else -1,
                            chi.sign(x1, y1, x2),
                            chi.sign(x1, y1, y2),
                        )
                    )
    transfers = sorted(transfer_set)

    free = [pr for pr in opp_pairs if pr not in forced]
    out = []
    for vals in product((-1, 1), repeat=len(free)):
        assign = dict(forced)
        assign.update(zip(free, vals))

        def sig(x, y):
            return assign[(x, y)] if x < y else -assign[(y, x)]

        ok = True
        for i, j, k, chi_ijk in same_far:
            sij, sik = sig(i, j), sig(i, k)
            if sij != sik and sij != chi_ijk:
                ok = False
                break
        if ok:
            for p1, f1, p2, f2, s_x2, s_y2 in transfers:
                s1 = assign[p1] * f1
                if s_x2 == s_y2 == -s1 and assign[p2] * f2 != s1:
                    ok = False
                    break
        if ok:
            out.append(
                OrientationVertex(
                    quad, opp_pairs, tuple(assign[pr] for pr in opp_pairs)
                )
            )
    out.sort(key=lambda v: v.signs)
    return out


def triangle_contains_y(chi: Chirotope, v: OrientationVertex, tri: Sequence[int]) -> bool:
    """Whether the crossing point of v's quad lies inside the triangle of
    three off-quad elements, given v's sign choices."""
    e, f, g = tri
    quad = v.quad
    regs = {h: region(chi, quad, h) for h in (e, f, g)}

    def dd(x, y):
        return (regs[x][0] != regs[y][0]) + (regs[x][1] != regs[y][1])

    opp = [(x, y) for x, y in combinations((e, f, g), 2) if dd(x, y) == 2]
    if not opp:
        return False
    same = [(x, y) for x, y in combinations((e, f, g), 2) if dd(x, y) == 0]
    if same:
        j, k = same[0]
        (i,) = [h for h in (e, f, g) if h not in (j, k)]
        return determined_sign(chi, v, i, j) != determined_sign(chi, v, i, k)
    # three pairwise distinct regions: one opposite pair, third neighbours both
    (p, q) = opp[0]
    (k,) = [h for h in (e, f, g) if h not in (p, q)]
    for (i, j) in ((p, q), (q, p)):
        got = _neighbor_force_value(chi, quad, regs, i, j, k)
        if got is not None:
            t, _ = got
            return determined_sign(chi, v, i, j) == t
    raise ValueError(f"unreachable region pattern for triangle {tri} on {quad}")


def tverberg_3322_at(chi: Chirotope, v: OrientationVertex) -> List[TverbergPartition]:
    """The 3+3+2+2 partitions visible at this orientation vertex: the quad's
    two lines as 2-pieces, the remaining six split into two triangles that
    both contain the crossing point."""
    quad = v.quad
    others = quad.others(chi.n)
    out = []
    anchor, rest = others[0], others[1:]
    for mates in combinations(rest, 2):
        t1 = (anchor,) + mates
        t2 = tuple(h for h in rest if h not in mates)
        if triangle_contains_y(chi, v, t1) and triangle_contains_y(chi, v, t2):
            out.append(
                TverbergPartition(
                    _canon_pieces([t1, t2, (quad.a, quad.b), (quad.c, quad.d)]),
                    quad=quad,
                )
            )
    return out


def color_edge(
    chi: Chirotope,
    v: OrientationVertex,
    cp: ColorPartition,
    base_3331: Optional[List[TverbergPartition]] = None,
) -> bool:
    """Vertex-to-colouring adjacency: no visible partition is rainbow."""
    if base_3331 is None:
        base_3331 = tverberg_3331(chi)
    cmask = cp.mask()
    for tv in base_3331:
        if tv.mask() & cmask == 0:
            return False
    for tv in tverberg_3322_at(chi, v):
        if tv.mask() & cmask == 0:
            return False
    return True


def _lines(q: Quad) -> FrozenSet[FrozenSet[int]]:
    return frozenset((frozenset((q.a, q.b)), frozenset((q.c, q.d))))


def _p49_direction(chi, v, w, a, b, c, d, cp, dp) -> bool:
    """Check Prop-style transfer with hypotheses on v's point y and
    requirements on w's point y'; quads labelled (a,b,c,d) and (a,b,cp,dp)
    with chi(a,b,c) == chi(a,b,cp)."""
    sv_ref = determined_sign(chi, v, cp, dp)
    if sv_ref is None:
        return True
    t = -sv_ref
    excl = {a, b, cp, dp}
    s_c = chi.sign(a, b, c)
    side_i = [h for h in range(chi.n) if h not in excl and chi.sign(a, b, h) == s_c]
    side_j = [h for h in range(chi.n) if h not in excl and chi.sign(a, b, h) == -s_c]
    fired = False
    for i in side_i:
        for j in side_j:
            sv = determined_sign(chi, v, i, j)
            if sv is None or sv == sv_ref:
                continue
            fired = True
            sw = determined_sign(chi, w, i, j)
            if sw is not None and sw != t:
                return False
    if fired:
        sw_cd = determined_sign(chi, w, c, d)
        if sw_cd is not None and sw_cd != t:
            return False
    return True


def ip_edge(chi: Chirotope, v: OrientationVertex, w: OrientationVertex) -> bool:
    """Adjacency between orientation vertices of two distinct quads."""
    if v.quad == w.quad:
        raise ValueError("ip_edge needs vertices of distinct quads")
    shared = _lines(v.quad) & _lines(w.quad)
    if not shared:
        return True
    (line,) = shared
    a, b = sorted(line)
    (vline,) = _lines(v.quad) - shared
    (wline,) = _lines(w.quad) - shared
    c, d = sorted(vline)
    cp, dp = sorted(wline)
    if chi.sign(a, b, cp) != chi.sign(a, b, c):
        cp, dp = dp, cp
    return _p49_direction(chi, v, w, a, b, c, d, cp, dp) and _p49_direction(
        chi, w, v, a, b, cp, dp, c, d
    )


# -- the graph ---------------------------------------------------------------


@dataclass
class HIndex:
    """Vertex bookkeeping for H(chi): per-part metadata and id ranges."""

    quads: List[Quad]
    vertices: List[List[OrientationVertex]]  # per quad part
    colorings: List[ColorPartition]
    part_offsets: List[int]

    def vertex(self, vid: int):
        """The OrientationVertex or ColorPartition behind a graph id."""
        for p in range(len(self.quads)):
            if vid < self.part_offsets[p + 1]:
                return self.vertices[p][vid - self.part_offsets[p]]
        return self.colorings[vid - self.part_offsets[len(self.quads)]]

    def empty_parts(self) -> List[int]:
        return [p for p, vs in enumerate(self.vertices) if not vs]


def build_H(chi: Chirotope) -> Tuple[KPartiteGraph, HIndex]:
    """The (#valid quads + 1)-partite graph H(chi)."""
    quads = valid_quads(chi)
    verts = [enumerate_orientation_vertices(chi, q) for q in quads]
    colorings = enumerate_color_partitions()
    sizes = [len(vs) for vs in verts] + [len(colorings)]
    offsets = [0]
    for s in sizes:
        offsets.append(offsets[-1] + s)
    n = offsets[-1]
    nq = len(quads)
    color_base = offsets[nq]

    flat: List[OrientationVertex] = [v for vs in verts for v in vs]
    part_of_flat = [p for p, vs in enumerate(verts) for _ in vs]

    # per-vertex determined-sign tables for fast transfer checks
    tables: List[List[List[Optional[int]]]] = []
    for v in flat:
        tbl: List[List[Optional[int]]] = [[None] * 10 for _ in range(10)]
        for i in range(10):
            for j in range(10):
                if i != j:
                    tbl[i][j] = determined_sign(chi, v, i, j)
        tables.append(tbl)

    rows = [0] * n

    # quad-quad edges; line-disjoint quads are fully adjacent
    line_sets = [_lines(q) for q in quads]
    part_masks = [
        ((1 << (offsets[p + 1] - offsets[p])) - 1) << offsets[p] for p in range(nq)
    ]
    full_adj = [0] * nq
    for p in range(nq):
        for q in range(p + 1, nq):
            if not (line_sets[p] & line_sets[q]):
                full_adj[p] |= part_masks[q]
                full_adj[q] |= part_masks[p]
    for p in range(nq):
        if full_adj[p]:
            for vi in range(offsets[p], offsets[p + 1]):
                rows[vi] |= full_adj[p]
    for p in range(nq):
        if not verts[p]:
            continue
        for q in range(p + 1, nq):
            if not verts[q]:
                continue
            if not (line_sets[p] & line_sets[q]):
                continue
            (line,) = line_sets[p] & line_sets[q]
            a, b = sorted(line)
            (pline,) = line_sets[p] - {line}
            (qline,) = line_sets[q] - {line}
            c, d = sorted(pline)
            cp, dp = sorted(qline)
            if chi.sign(a, b, cp) != chi.sign(a, b, c):
                cp, dp = dp, cp
            s_c = chi.sign(a, b, c)
            excl_v = {a, b, cp, dp}
            excl_w = {a, b, c, d}
            side_iv = [h for h in range(10) if h not in excl_v and chi.sign(a, b, h) == s_c]
            side_jv = [h for h in range(10) if h not in excl_v and chi.sign(a, b, h) == -s_c]
            side_iw = [h for h in range(10) if h not in excl_w and chi.sign(a, b, h) == s_c]
            side_jw = [h for h in range(10) if h not in excl_w and chi.sign(a, b, h) == -s_c]
            for vi in range(offsets[p], offsets[p + 1]):
                tv = tables[vi]
                for wi in range(offsets[q], offsets[q + 1]):
                    tw = tables[wi]
                    if _p49_tables(tv, tw, side_iv, side_jv, cp, dp, c, d) and _p49_tables(
                        tw, tv, side_iw, side_jw, c, d, cp, dp
                    ):
                        rows[vi] |= 1 << wi
                        rows[wi] |= 1 << vi

    # vertex-colouring edges
    base_3331_masks = sorted({tv.mask() for tv in tverberg_3331(chi)})
    cp_masks = np.array([cp.mask() for cp in colorings], dtype=np.uint64)
    nflat = len(flat)
    color_adj = np.zeros((len(colorings), nflat), dtype=bool)
    cache: Dict[Tuple[int, ...], Tuple[int, np.ndarray]] = {}
    for vid, v in enumerate(flat):
        masks = tuple(
            sorted(
                set(base_3331_masks)
                | {tv.mask() for tv in tverberg_3322_at(chi, v)}
            )
        )
        hit = cache.get(masks)
        if hit is None:
            alive = np.ones(len(colorings), dtype=bool)
            for m in masks:
                alive &= (cp_masks & np.uint64(m)) != 0
            row_int = int.from_bytes(
                np.packbits(alive, bitorder="little").tobytes(), "little"
            )
            hit = (row_int, alive)
            cache[masks] = hit
        rows[vid] |= hit[0] << color_base
        color_adj[:, vid] = hit[1]
    for ci in range(len(colorings)):
        rows[color_base + ci] |= int.from_bytes(
            np.packbits(color_adj[ci], bitorder="little").tobytes(), "little"
        )

    g = KPartiteGraph.from_rows(sizes, rows)
    return g, HIndex(quads, verts, colorings, offsets)


def _p49_tables(tv, tw, side_i, side_j, cp, dp, c, d) -> bool:
    """Table-driven variant of _p49_direction (hypotheses on tv's vertex)."""
    sv_ref = tv[cp][dp]
    if sv_ref is None:
        return True
    t = -sv_ref
    fired = False
    for i in side_i:
        row_v = tv[i]
        row_w = tw[i]
        for j in side_j:
            sv = row_v[j]
            if sv is None or sv == sv_ref:
                continue
            fired = True
            sw = row_w[j]
            if sw is not None and sw != t:
                return False
    if fired:
        sw_cd = tw[c][d]
        if sw_cd is not None and sw_cd != t:
            return False
    return True


@dataclass
class VerifyResult:
    status: str  # "verified" | "counterexample" | "timeout"
    parts: int
    vertices: int
    edges: int
    build_ms: float
    search_ms: float
    witness: Optional[dict] = None


def verify_chirotope(
    chi: Chirotope,
    engine: str = "kpkc",
    timeout: Optional[float] = None,
) -> VerifyResult:
    """Build H(chi) and certify it has no k-clique."""
    t0 = time.monotonic()
    g, index = build_H(chi)
    t1 = time.monotonic()
    status, witness = has_kclique(g, engine, timeout=timeout)
    t2 = time.monotonic()
    decoded = None
    if status == "clique":
        decoded = {
            "vertices": [index.vertex(v) for v in witness],
            "ids": list(witness),
        }
    return VerifyResult(
        status={"clique": "counterexample", "none": "verified", "timeout": "timeout"}[
            status
        ],
        parts=g.k,
        vertices=g.n,
        edges=g.num_edges(),
        build_ms=(t1 - t0) * 1000.0,
        search_ms=(t2 - t1) * 1000.0,
        witness=decoded,
    )
