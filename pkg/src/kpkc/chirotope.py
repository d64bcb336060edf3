"""Rank-3 chirotopes on small ground sets, with the quad machinery on top.

A rank-3 chirotope on elements 0..n-1 (n <= 16) assigns a sign in {-1, 0, +1}
to every ordered triple, alternating under permutations and zero on repeated
elements.  We store one sign per ascending triple, in lexicographic order;
``sign`` extends to arbitrary order via the permutation parity, so the
alternating axiom holds by construction.  ``check_axioms`` verifies the other
two: some triple is nonzero, and the three-term exchange condition
chi(x)chi(y) == chi(y_i, x2, x3) * chi(y with y_i replaced by x1) for some i,
over all ordered triples x, y with chi(x)chi(y) != 0.  ``is_acyclic`` checks
that for all distinct x1..x4 with chi(x1,x2,x3) != 0 one of chi(x1,x2,x4),
chi(x2,x3,x4), chi(x3,x1,x4) equals chi(x1,x2,x3).

A *quad* is an unordered pair of disjoint 2-subsets {a,b}, {c,d} of the
ground set, canonically ordered (a<b, c<d, (a,b) < (c,d)).  For a chirotope
in strong general position the quad is *crossing* when
chi(a,b,c)*chi(a,b,d) == -1 == chi(c,d,a)*chi(c,d,b), and *valid* when
additionally each of its two lines has between 2 and 4 of the remaining six
elements on its positive side.  Valid quads index the intersection-point
parts of the bigger graph built in :mod:`kpkc.tverberg`.

File formats living here:

* chirotope text: line ``chi <n>``, then one line of C(n,3) characters from
  ``+-0``, lexicographic ascending-triple order.
* points text: one ``x y`` pair of signed integers per line.
* b16: binary, consecutive 40-byte records of 10 points, each point two
  little-endian uint16 values.  Record 0 must be 10 points in convex
  position; the reader refuses the file otherwise.
"""

from __future__ import annotations

import itertools
import struct
from typing import List, Optional, Sequence, Tuple

import numpy as np

Point = Tuple[int, int]

_QUAD_CLASSES = ("not_crossing", "invalid", "valid")


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


def _orient(p: Point, q: Point, r: Point) -> int:
    return _sgn((q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]))


class Chirotope:
    __slots__ = ("n", "_signs", "_idx", "_tensor")

    def __init__(self, n: int, signs: Sequence[int]):
        if not 3 <= n <= 16:
            raise ValueError(f"need 3 <= n <= 16, got n={n}")
        triples = list(itertools.combinations(range(n), 3))
        if len(signs) != len(triples):
            raise ValueError(
                f"expected {len(triples)} signs for n={n}, got {len(signs)}"
            )
        if any(s not in (-1, 0, 1) for s in signs):
            raise ValueError("signs must be -1, 0 or +1")
        self.n = n
        self._signs = list(signs)
        self._idx = {t: i for i, t in enumerate(triples)}
        self._tensor: Optional[np.ndarray] = None

    @classmethod
    def from_points(cls, points: Sequence[Point]) -> "Chirotope":
        """The chirotope of a planar point sequence (exact integer signs)."""
        n = len(points)
        signs = [
            _orient(points[i], points[j], points[k])
            for i, j, k in itertools.combinations(range(n), 3)
        ]
        return cls(n, signs)

    @classmethod
    def convex(cls, n: int = 10) -> "Chirotope":
        """The chirotope of n points in convex position, counterclockwise."""
        from math import comb

        return cls(n, [1] * comb(n, 3))

    def sign(self, i: int, j: int, k: int) -> int:
        if i == j or j == k or i == k:
            if all(0 <= x < self.n for x in (i, j, k)):
                return 0
            raise IndexError(f"element out of range in ({i},{j},{k})")
        s = 1
        a, b, c = i, j, k
        if a > b:
            a, b = b, a
            s = -s
        if b > c:
            b, c = c, b
            s = -s
        if a > b:
            a, b = b, a
            s = -s
        try:
            return s * self._signs[self._idx[(a, b, c)]]
        except KeyError:
            raise IndexError(f"element out of range in ({i},{j},{k})") from None

    def sign_tensor(self) -> np.ndarray:
        """All signs as an (n, n, n) int8 array (cached)."""
        if self._tensor is None:
            n = self.n
            t = np.zeros((n, n, n), dtype=np.int8)
            for (i, j, k), pos in self._idx.items():
                s = self._signs[pos]
                t[i, j, k] = t[j, k, i] = t[k, i, j] = s
                t[j, i, k] = t[i, k, j] = t[k, j, i] = -s
            self._tensor = t
        return self._tensor

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Chirotope)
            and self.n == other.n
            and self._signs == other._signs
        )

    def __hash__(self):
        return hash((self.n, tuple(self._signs)))

    def __repr__(self) -> str:
        return f"Chirotope(n={self.n}, {_signs_to_text(self._signs)!r})"

    # -- axioms ------------------------------------------------------------

    def check_axioms(self) -> Optional[str]:
        """None if this is a chirotope, else a description of a violation.

        The alternating axiom holds by construction; this checks that the map
        is not identically zero and the three-term exchange condition.
        """
        if all(s == 0 for s in self._signs):
            return "identically zero"
        S = self.sign_tensor()
        T = np.array(
            list(itertools.permutations(range(self.n), 3)), dtype=np.intp
        )
        m = len(T)
        xi = np.repeat(np.arange(m), m)
        yi = np.tile(np.arange(m), m)
        X = T[xi]
        Y = T[yi]
        cx = S[X[:, 0], X[:, 1], X[:, 2]].astype(np.int16)
        cy = S[Y[:, 0], Y[:, 1], Y[:, 2]].astype(np.int16)
        lhs = cx * cy
        relevant = lhs != 0
        ok = ~relevant
        for i in range(3):
            A = S[Y[:, i], X[:, 1], X[:, 2]].astype(np.int16)
            cols = [Y[:, 0], Y[:, 1], Y[:, 2]]
            cols[i] = X[:, 0]
            B = S[cols[0], cols[1], cols[2]].astype(np.int16)
            ok |= A * B == lhs
        if ok.all():
            return None
        bad = int(np.flatnonzero(~ok)[0])
        x = tuple(int(v) for v in X[bad])
        y = tuple(int(v) for v in Y[bad])
        return f"exchange condition fails for x={x}, y={y}"

    def is_acyclic(self) -> bool:
        """No directed 4-tuple witnesses a cyclic orientation pattern."""
        S = self.sign_tensor()
        Q = np.array(
            list(itertools.permutations(range(self.n), 4)), dtype=np.intp
        )
        x1, x2, x3, x4 = Q[:, 0], Q[:, 1], Q[:, 2], Q[:, 3]
        base = S[x1, x2, x3]
        relevant = base != 0
        ok = (
            (S[x1, x2, x4] == base)
            | (S[x2, x3, x4] == base)
            | (S[x3, x1, x4] == base)
        )
        return bool((ok | ~relevant).all())


# -- quads -----------------------------------------------------------------


class Quad(tuple):
    """A canonical pair of disjoint lines ((a,b),(c,d)): a<b, c<d, (a,b)<(c,d)."""

    __slots__ = ()

    def __new__(cls, pair1: Sequence[int], pair2: Sequence[int]):
        a, b = sorted(pair1)
        c, d = sorted(pair2)
        if len({a, b, c, d}) != 4:
            raise ValueError(f"quad lines must be disjoint: {pair1}, {pair2}")
        if (a, b) > (c, d):
            (a, b), (c, d) = (c, d), (a, b)
        return super().__new__(cls, (a, b, c, d))

    @property
    def a(self) -> int:
        return self[0]

    @property
    def b(self) -> int:
        return self[1]

    @property
    def c(self) -> int:
        return self[2]

    @property
    def d(self) -> int:
        return self[3]

    def lines(self) -> Tuple[Tuple[int, int], Tuple[int, int]]:
        return (self[0], self[1]), (self[2], self[3])

    def others(self, n: int) -> List[int]:
        s = set(self)
        return [h for h in range(n) if h not in s]

    def __repr__(self) -> str:
        return f"Quad(({self[0]},{self[1]}),({self[2]},{self[3]}))"


def classify_quad(chi: Chirotope, quad: Quad) -> str:
    """"not_crossing", "invalid" (crossing but not valid), or "valid"."""
    a, b, c, d = quad
    sab_c = chi.sign(a, b, c)
    sab_d = chi.sign(a, b, d)
    scd_a = chi.sign(c, d, a)
    scd_b = chi.sign(c, d, b)
    if 0 in (sab_c, sab_d, scd_a, scd_b):
        raise ValueError(f"degenerate quad {quad}: a line through a third element")
    if sab_c * sab_d != -1 or scd_a * scd_b != -1:
        return "not_crossing"
    rest = quad.others(chi.n)
    pos_ab = pos_cd = 0
    for h in rest:
        s_ab = chi.sign(a, b, h)
        s_cd = chi.sign(c, d, h)
        if s_ab == 0 or s_cd == 0:
            raise ValueError(
                f"degenerate quad {quad}: element {h} lies on one of its lines"
            )
        pos_ab += s_ab == 1
        pos_cd += s_cd == 1
    lo, hi = 2, len(rest) - 2
    if lo <= pos_ab <= hi and lo <= pos_cd <= hi:
        return "valid"
    return "invalid"


def valid_quads(chi: Chirotope) -> List[Quad]:
    """All valid quads, in canonical (lexicographic) order."""
    out = []
    for p, q, r, s in itertools.combinations(range(chi.n), 4):
        for pair1, pair2 in (((p, q), (r, s)), ((p, r), (q, s)), ((p, s), (q, r))):
            quad = Quad(pair1, pair2)
            if classify_quad(chi, quad) == "valid":
                out.append(quad)
    out.sort()
    return out


def region(chi: Chirotope, quad: Quad, h: int) -> Tuple[int, int]:
    """The sign pair (chi(a,b,h), chi(c,d,h)) locating h relative to the quad."""
    a, b, c, d = quad
    return (chi.sign(a, b, h), chi.sign(c, d, h))


def pair_class(chi: Chirotope, quad: Quad, i: int, j: int) -> str:
    """"same", "neighboring" or "opposite" region relation of i and j."""
    ri = region(chi, quad, i)
    rj = region(chi, quad, j)
    if 0 in ri or 0 in rj:
        raise ValueError(f"degenerate region for quad {quad}: {i} or {j} on a line")
    diff = (ri[0] != rj[0]) + (ri[1] != rj[1])
    return ("same", "neighboring", "opposite")[diff]


# -- file formats ----------------------------------------------------------


class ChirotopeFormatError(ValueError):
    pass


def _signs_to_text(signs: Sequence[int]) -> str:
    return "".join("+" if s == 1 else "-" if s == -1 else "0" for s in signs)


def write_chirotope(chi: Chirotope, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(f"chi {chi.n}\n{_signs_to_text(chi._signs)}\n")


def parse_chirotope(path) -> Chirotope:
    with open(path, "r", encoding="utf-8") as f:
        lines = [ln.strip() for ln in f if ln.strip()]
    if not lines or not lines[0].startswith("chi"):
        raise ChirotopeFormatError("expected 'chi <n>' header")
    fields = lines[0].split()
    if len(fields) != 2:
        raise ChirotopeFormatError(f"malformed header {lines[0]!r}")
    try:
        n = int(fields[1])
    except ValueError:
        raise ChirotopeFormatError(f"malformed header {lines[0]!r}") from None
    if len(lines) != 2:
        raise ChirotopeFormatError("expected exactly one sign line after the header")
    text = lines[1]
    decode = {"+": 1, "-": -1, "0": 0}
    signs = []
    for pos, ch in enumerate(text):
        if ch not in decode:
            raise ChirotopeFormatError(f"bad sign character {ch!r} at position {pos}")
        signs.append(decode[ch])
    try:
        return Chirotope(n, signs)
    except ValueError as exc:
        raise ChirotopeFormatError(str(exc)) from None


def write_points(points: Sequence[Point], path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for x, y in points:
            f.write(f"{x} {y}\n")


def parse_points(path) -> List[Point]:
    points = []
    with open(path, "r", encoding="utf-8") as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.strip()
            if not line:
                continue
            fields = line.split()
            if len(fields) != 2:
                raise ChirotopeFormatError(
                    f"line {lineno}: expected 'x y', got {line!r}"
                )
            try:
                points.append((int(fields[0]), int(fields[1])))
            except ValueError:
                raise ChirotopeFormatError(
                    f"line {lineno}: non-integer coordinate"
                ) from None
    return points


class B16FormatError(ValueError):
    pass


_B16_RECORD = struct.Struct("<20H")


def _in_convex_position(points: Sequence[Point]) -> bool:
    """All points strictly extreme (convex hull vertices, no three collinear
    on the hull)."""
    pts = sorted(set(points))
    if len(pts) != len(points):
        return False

    def half(seq):
        hull: List[Point] = []
        for p in seq:
            while len(hull) >= 2 and _orient(hull[-2], hull[-1], p) <= 0:
                hull.pop()
            hull.append(p)
        return hull

    lower = half(pts)
    upper = half(reversed(pts))
    return len(lower) + len(upper) - 2 == len(points)


def b16_record_count(path) -> int:
    import os

    size = os.path.getsize(path)
    if size % _B16_RECORD.size != 0:
        raise B16FormatError(
            f"file size {size} is not a multiple of {_B16_RECORD.size}"
        )
    return size // _B16_RECORD.size


def read_b16(path, index: int) -> List[Point]:
    """Read record ``index`` of a b16 order-type file (10 uint16 points).

    Record 0 is required to be 10 points in convex position; anything else
    means the file is not the expected database and the reader refuses it.
    """
    count = b16_record_count(path)
    if not 0 <= index < count:
        raise IndexError(f"record {index} out of range, file has {count}")

    def record(i: int) -> List[Point]:
        with open(path, "rb") as f:
            f.seek(i * _B16_RECORD.size)
            data = f.read(_B16_RECORD.size)
        if len(data) != _B16_RECORD.size:
            raise B16FormatError(f"short read at record {i}")
        flat = _B16_RECORD.unpack(data)
        return [(flat[2 * j], flat[2 * j + 1]) for j in range(10)]

    first = record(0)
    if not _in_convex_position(first):
        raise B16FormatError(
            "record 0 is not 10 points in convex position; refusing file"
        )
    return record(index) if index else first


def write_b16(records: Sequence[Sequence[Point]], path) -> None:
    with open(path, "wb") as f:
        for rec in records:
            if len(rec) != 10:
                raise ValueError("each b16 record holds exactly 10 points")
            flat = []
            for x, y in rec:
                if not (0 <= x < 65536 and 0 <= y < 65536):
                    raise ValueError(f"coordinate ({x},{y}) not a uint16")
                flat.extend((x, y))
            f.write(_B16_RECORD.pack(*flat))
