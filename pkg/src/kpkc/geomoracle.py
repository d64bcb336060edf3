"""Exact rational plane geometry, used as an independent cross-check.

Everything the combinatorial pipeline in :mod:`kpkc.tverberg` derives from
chirotope signs alone is recomputed here from actual coordinates with exact
arithmetic: integer orientation determinants and stdlib ``Fraction`` line
intersections (Python integers are arbitrary precision, so no overflow
analysis is needed).  The two sides are developed independently on purpose;
agreement on sampled configurations is what the soundness tests assert.

"Strong general position" for a point set means no three points are
collinear and no three connecting lines spanned by pairwise-disjoint point
pairs meet in a common (affine) point.  ``sample_config`` rejection-samples
10-point configurations in strong general position with coordinates below
2**16 from a seeded splitmix64 stream.

A *Tverberg partition* of 10 points here is a partition into four pieces,
of shapes 3+3+3+1 or 3+3+2+2, whose convex hulls share a common point: for
3+3+3+1 the singleton lies in all three triangles, for 3+3+2+2 the two
2-point segments cross and their crossing point lies in both triangles.
``check_theorem`` asks, for every partition of the 10 points into colour
classes with size profile (3,3,3,1), (3,3,2,2) or (2,2,2,2,2), whether some
Tverberg partition is *rainbow* (each piece meets each colour class at most
once); the expected answer is always yes.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .randgen import SplitMix64

Point = Tuple[int, int]
RPoint = Tuple[Fraction, Fraction]


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


def orient(p, q, r) -> int:
    """Sign of the signed area of (p, q, r); exact for int or Fraction."""
    return _sgn((q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]))


def _line(p: Point, q: Point) -> Tuple[int, int, int]:
    """Homogeneous coefficients (A, B, C) of the line through p, q."""
    return (p[1] - q[1], q[0] - p[0], p[0] * q[1] - p[1] * q[0])


def line_intersection(p1: Point, p2: Point, p3: Point, p4: Point) -> RPoint:
    """Exact intersection point of lines p1p2 and p3p4."""
    a1, b1, c1 = _line(p1, p2)
    a2, b2, c2 = _line(p3, p4)
    den = a1 * b2 - a2 * b1
    if den == 0:
        raise ValueError("parallel lines have no intersection point")
    x = Fraction(b1 * c2 - b2 * c1, den)
    y = Fraction(a2 * c1 - a1 * c2, den)
    return (x, y)


def strong_general_position(points: Sequence[Point]) -> bool:
    n = len(points)
    for i, j, k in combinations(range(n), 3):
        if orient(points[i], points[j], points[k]) == 0:
            return False
    pairs = list(combinations(range(n), 2))
    lines = {pr: _line(points[pr[0]], points[pr[1]]) for pr in pairs}
    for x in range(len(pairs)):
        px = set(pairs[x])
        for y in range(x + 1, len(pairs)):
            if px & set(pairs[y]):
                continue
            l1, l2 = lines[pairs[x]], lines[pairs[y]]
            # projective intersection of l1 and l2
            mx = l1[1] * l2[2] - l2[1] * l1[2]
            my = l2[0] * l1[2] - l1[0] * l2[2]
            mz = l1[0] * l2[1] - l2[0] * l1[1]
            if mz == 0:
                continue  # parallel: no affine common point
            taken = px | set(pairs[y])
            for z in range(y + 1, len(pairs)):
                if taken & set(pairs[z]):
                    continue
                l3 = lines[pairs[z]]
                if l3[0] * mx + l3[1] * my + l3[2] * mz == 0:
                    return False
    return True


def sample_config(
    seed: int, coord_bound: int = 2**16, max_rejects: int = 10**4
) -> List[Point]:
    """A seeded 10-point configuration in strong general position."""
    rng = SplitMix64(seed)
    for _ in range(max_rejects):
        pts = [
            (rng.randint(0, coord_bound - 1), rng.randint(0, coord_bound - 1))
            for _ in range(10)
        ]
        if strong_general_position(pts):
            return pts
    raise RuntimeError(
        f"no strong-general-position configuration after {max_rejects} samples"
    )


# A frozen integer 10-gon: convex position, counterclockwise (chirotope
# identically +1 on ascending triples), strong general position, uint16
# coordinates.  Found once by seeded search and pinned.
CONVEX10 = (
    (54794, 48192),
    (53951, 51726),
    (51350, 54319),
    (46291, 56952),
    (25076, 57181),
    (7833, 45108),
    (7798, 24232),
    (9487, 16657),
    (13534, 14066),
    (45887, 9107),
)


def convex_config() -> List[Point]:
    """The pinned convex-position configuration, as a point list."""
    return [tuple(p) for p in CONVEX10]


def point_in_triangle(y, t1, t2, t3) -> bool:
    """Strict interior test (boundary cases do not occur in strong g.p.)."""
    s1 = orient(t1, t2, y)
    s2 = orient(t2, t3, y)
    s3 = orient(t3, t1, y)
    return s1 == s2 == s3 and s1 != 0


def segments_cross(points: Sequence[Point], a: int, b: int, c: int, d: int) -> bool:
    pa, pb, pc, pd = points[a], points[b], points[c], points[d]
    return (
        orient(pa, pb, pc) * orient(pa, pb, pd) == -1
        and orient(pc, pd, pa) * orient(pc, pd, pb) == -1
    )


def true_vertex_signs(
    points: Sequence[Point], quad: Sequence[int]
) -> Tuple[RPoint, Dict[Tuple[int, int], int]]:
    """The crossing point y of the quad's two lines, and orient(p_i, p_j, y)
    for every element pair (i < j)."""
    a, b, c, d = quad
    y = line_intersection(points[a], points[b], points[c], points[d])
    signs = {}
    for i, j in combinations(range(len(points)), 2):
        signs[(i, j)] = orient(points[i], points[j], y)
    return y, signs


CanonicalPartition = Tuple[Tuple[int, ...], ...]


def _canon_pieces(pieces: Sequence[Sequence[int]]) -> CanonicalPartition:
    return tuple(
        sorted((tuple(sorted(p)) for p in pieces), key=lambda t: (-len(t), t))
    )


def geometric_tverberg_partitions(points: Sequence[Point]) -> List[CanonicalPartition]:
    """All Tverberg partitions of shapes 3+3+3+1 and 3+3+2+2, exhaustively."""
    n = len(points)
    found = []
    # 3+3+3+1: a point in three pairwise-disjoint triangles
    for p in range(n):
        rest = [h for h in range(n) if h != p]
        anchor = rest[0]
        for t1rest in combinations(rest[1:], 2):
            t1 = (anchor,) + t1rest
            left = [h for h in rest[1:] if h not in t1rest]
            anchor2 = left[0]
            for t2rest in combinations(left[1:], 2):
                t2 = (anchor2,) + t2rest
                t3 = tuple(h for h in left[1:] if h not in t2rest)
                if all(
                    point_in_triangle(
                        points[p], points[t[0]], points[t[1]], points[t[2]]
                    )
                    for t in (t1, t2, t3)
                ):
                    found.append(_canon_pieces([t1, t2, t3, (p,)]))
    # 3+3+2+2: two crossing segments, crossing point in both triangles
    for quad4 in combinations(range(n), 4):
        p, q, r, s = quad4
        for ab, cd in (((p, q), (r, s)), ((p, r), (q, s)), ((p, s), (q, r))):
            if not segments_cross(points, ab[0], ab[1], cd[0], cd[1]):
                continue
            y = line_intersection(
                points[ab[0]], points[ab[1]], points[cd[0]], points[cd[1]]
            )
            rest = [h for h in range(n) if h not in quad4]
            anchor = rest[0]
            for t1rest in combinations(rest[1:], 2):
                t1 = (anchor,) + t1rest
                t2 = tuple(h for h in rest[1:] if h not in t1rest)
                if point_in_triangle(
                    y, points[t1[0]], points[t1[1]], points[t1[2]]
                ) and point_in_triangle(y, points[t2[0]], points[t2[1]], points[t2[2]]):
                    found.append(_canon_pieces([t1, t2, ab, cd]))
    return found


# -- colour partitions and the theorem check --------------------------------

_PROFILES = ((3, 3, 3, 1), (3, 3, 2, 2), (2, 2, 2, 2, 2))


def _partitions_with_sizes(elements: Tuple[int, ...], sizes) -> List[CanonicalPartition]:
    """Set partitions of ``elements`` with the given class-size multiset."""
    if not sizes:
        return [()] if not elements else []
    out = []
    anchor = elements[0]
    rest = elements[1:]
    for s in sorted(set(sizes), reverse=True):
        remaining_sizes = list(sizes)
        remaining_sizes.remove(s)
        for mates in combinations(rest, s - 1):
            cls = (anchor,) + mates
            left = tuple(e for e in rest if e not in mates)
            for sub in _partitions_with_sizes(left, tuple(remaining_sizes)):
                out.append((cls,) + sub)
    return out


def color_partitions_10() -> List[CanonicalPartition]:
    """All colourings of 10 elements with size profile (3,3,3,1), (3,3,2,2)
    or (2,2,2,2,2), classes in canonical order."""
    elements = tuple(range(10))
    out = []
    for profile in _PROFILES:
        for part in _partitions_with_sizes(elements, profile):
            out.append(_canon_pieces(part))
    return out


_PAIR_BIT = {
    pr: 1 << idx for idx, pr in enumerate(combinations(range(10), 2))
}


def same_class_mask(partition: CanonicalPartition) -> int:
    """Bitmask over element pairs that share a class (or piece)."""
    mask = 0
    for cls in partition:
        for pr in combinations(sorted(cls), 2):
            mask |= _PAIR_BIT[pr]
    return mask


def is_rainbow(tverberg: CanonicalPartition, colors: CanonicalPartition) -> bool:
    """Every piece meets every colour class at most once."""
    return same_class_mask(tverberg) & same_class_mask(colors) == 0


def check_theorem(points: Sequence[Point]) -> Optional[CanonicalPartition]:
    """None if every colouring admits a rainbow Tverberg partition, else the
    first colouring without one."""
    tvs = [same_class_mask(t) for t in geometric_tverberg_partitions(points)]
    for colors in color_partitions_10():
        cmask = same_class_mask(colors)
        if not any(cmask & t == 0 for t in tvs):
            return colors
    return None
