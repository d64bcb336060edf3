"""Bit-packed vertex sets and k-partite graphs.

Vertices of a k-partite graph are the integers 0..n-1, laid out part by part:
part p owns the contiguous id range [part_bounds[p], part_bounds[p+1]).  Parts
may be empty.  Edges only ever join vertices of distinct parts; adjacency is
stored per vertex as a ``VertexSet``, which is a thin wrapper around a Python
integer used as a bitmask (bit v set <=> vertex v present).  Python's big
integers give C-speed AND/OR/popcount on these masks, which is what the search
engines lean on.

Graph files use a small DIMACS-flavoured text format ("kpg")::

    c optional comment lines
    p kpg <n> <m> <k>
    q <s1> <s2> ... <sk>
    e <u> <v>

with one ``e`` line per edge, endpoints 0-based and ``u < v``, edges sorted
lexicographically on write.  Readers accept gzip-compressed files
transparently (sniffed by magic number, not file name).
"""

from __future__ import annotations

import gzip
import io
from typing import Iterable, Iterator, List, Sequence, Tuple


class VertexSet:
    """A set of vertex ids below a fixed capacity, stored as one big int."""

    __slots__ = ("capacity", "bits")

    def __init__(self, capacity: int, bits: int = 0):
        if capacity < 0:
            raise ValueError(f"capacity must be nonnegative, got {capacity}")
        if bits < 0 or bits >> capacity:
            raise ValueError(f"bits out of range for capacity {capacity}")
        self.capacity = capacity
        self.bits = bits

    @classmethod
    def from_iterable(cls, capacity: int, ids: Iterable[int]) -> "VertexSet":
        s = cls(capacity)
        for v in ids:
            s.add(v)
        return s

    def _check(self, v: int) -> None:
        if not 0 <= v < self.capacity:
            raise IndexError(f"vertex {v} out of range for capacity {self.capacity}")

    def add(self, v: int) -> None:
        self._check(v)
        self.bits |= 1 << v

    def discard(self, v: int) -> None:
        self._check(v)
        self.bits &= ~(1 << v)

    def __contains__(self, v: int) -> bool:
        return 0 <= v < self.capacity and (self.bits >> v) & 1 == 1

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __iter__(self) -> Iterator[int]:
        b = self.bits
        while b:
            low = b & -b
            yield low.bit_length() - 1
            b ^= low

    def _coerce(self, other: "VertexSet") -> int:
        if self.capacity != other.capacity:
            raise ValueError(
                f"capacity mismatch: {self.capacity} vs {other.capacity}"
            )
        return other.bits

    def __and__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.capacity, self.bits & self._coerce(other))

    def __or__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.capacity, self.bits | self._coerce(other))

    def intersection(self, other: "VertexSet") -> "VertexSet":
        return self & other

    def union(self, other: "VertexSet") -> "VertexSet":
        return self | other

    def copy(self) -> "VertexSet":
        return VertexSet(self.capacity, self.bits)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, VertexSet)
            and self.capacity == other.capacity
            and self.bits == other.bits
        )

    def __hash__(self) -> int:
        return hash((self.capacity, self.bits))

    def __repr__(self) -> str:
        return f"VertexSet({self.capacity}, {{{', '.join(map(str, self))}}})"


class KPartiteGraph:
    """A k-partite graph with bitmask adjacency rows.

    ``part_bounds`` has length k+1; part p is the id range
    [part_bounds[p], part_bounds[p+1]).  ``adjacency[v]`` is the VertexSet of
    neighbours of v (never containing vertices of v's own part).
    """

    __slots__ = ("n", "k", "part_bounds", "adjacency", "_part_of", "part_masks")

    def __init__(self, part_sizes: Sequence[int], adjacency: List[VertexSet]):
        if any(s < 0 for s in part_sizes):
            raise ValueError("part sizes must be nonnegative")
        self.k = len(part_sizes)
        bounds = [0]
        for s in part_sizes:
            bounds.append(bounds[-1] + s)
        self.part_bounds = tuple(bounds)
        self.n = bounds[-1]
        if len(adjacency) != self.n:
            raise ValueError(
                f"adjacency has {len(adjacency)} rows for n={self.n}"
            )
        self.adjacency = adjacency
        part_of = []
        for p, s in enumerate(part_sizes):
            part_of.extend([p] * s)
        self._part_of = part_of
        self.part_masks = tuple(
            ((1 << (bounds[p + 1] - bounds[p])) - 1) << bounds[p]
            for p in range(self.k)
        )

    @classmethod
    def from_rows(cls, part_sizes: Sequence[int], rows: List[int]) -> "KPartiteGraph":
        """Build from raw bitmask rows (trusted caller, light validation)."""
        n = sum(part_sizes)
        adjacency = [VertexSet(n, r) for r in rows]
        return cls(part_sizes, adjacency)

    def part_sizes(self) -> Tuple[int, ...]:
        b = self.part_bounds
        return tuple(b[p + 1] - b[p] for p in range(self.k))

    def part_of(self, v: int) -> int:
        if not 0 <= v < self.n:
            raise IndexError(f"vertex {v} out of range for n={self.n}")
        return self._part_of[v]

    def part_members(self, p: int) -> range:
        return range(self.part_bounds[p], self.part_bounds[p + 1])

    def are_adjacent(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def num_edges(self) -> int:
        return sum(row.bits.bit_count() for row in self.adjacency) // 2

    def edges(self) -> Iterator[Tuple[int, int]]:
        """All edges as (u, v) with u < v, in lexicographic order."""
        for u in range(self.n):
            b = self.adjacency[u].bits >> (u + 1)
            v = u + 1
            while b:
                low = b & -b
                yield (u, v + low.bit_length() - 1)
                b ^= low

    def __repr__(self) -> str:
        return (
            f"KPartiteGraph(n={self.n}, k={self.k}, m={self.num_edges()})"
        )


def build_graph(
    part_sizes: Sequence[int], edges: Iterable[Tuple[int, int]]
) -> KPartiteGraph:
    """Build a validated k-partite graph from an edge list.

    Rejects self-loops, out-of-range endpoints, same-part edges and duplicate
    edges (an edge and its reverse count as duplicates).
    """
    n = sum(part_sizes)
    g = KPartiteGraph(part_sizes, [VertexSet(n) for _ in range(n)])
    seen = set()
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u},{v}) out of range for n={n}")
        if u == v:
            raise ValueError(f"self-loop ({u},{v})")
        if g._part_of[u] == g._part_of[v]:
            raise ValueError(
                f"edge ({u},{v}) joins two vertices of part {g._part_of[u]}"
            )
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise ValueError(f"duplicate edge ({u},{v})")
        seen.add(key)
        g.adjacency[u].add(v)
        g.adjacency[v].add(u)
    return g


class GraphFormatError(ValueError):
    """Raised on malformed kpg files; message carries the 1-based line number."""


def _open_maybe_gzip(path) -> io.TextIOWrapper:
    f = open(path, "rb")
    magic = f.read(2)
    f.seek(0)
    if magic == b"\x1f\x8b":
        return io.TextIOWrapper(gzip.open(f), encoding="utf-8")
    return io.TextIOWrapper(f, encoding="utf-8")


def parse_graph(path) -> KPartiteGraph:
    """Parse a kpg file (gzip accepted transparently)."""
    header = None  # (n, m, k)
    part_sizes = None
    part_of: List[int] = []
    rows: List[int] = []
    n_edges = 0
    with _open_maybe_gzip(path) as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.strip()
            if not line or line.startswith("c"):
                continue
            fields = line.split()
            if fields[0] == "p":
                if header is not None:
                    raise GraphFormatError(f"line {lineno}: second p line")
                if len(fields) != 5 or fields[1] != "kpg":
                    raise GraphFormatError(
                        f"line {lineno}: expected 'p kpg <n> <m> <k>', got {line!r}"
                    )
                try:
                    header = tuple(int(x) for x in fields[2:5])
                except ValueError:
                    raise GraphFormatError(
                        f"line {lineno}: non-integer field in p line"
                    ) from None
            elif fields[0] == "q":
                if header is None:
                    raise GraphFormatError(f"line {lineno}: q line before p line")
                if part_sizes is not None:
                    raise GraphFormatError(f"line {lineno}: second q line")
                try:
                    part_sizes = [int(x) for x in fields[1:]]
                except ValueError:
                    raise GraphFormatError(
                        f"line {lineno}: non-integer part size"
                    ) from None
                n, _, k = header
                if len(part_sizes) != k:
                    raise GraphFormatError(
                        f"line {lineno}: {len(part_sizes)} part sizes, header says k={k}"
                    )
                if any(s < 0 for s in part_sizes):
                    raise GraphFormatError(f"line {lineno}: negative part size")
                if sum(part_sizes) != n:
                    raise GraphFormatError(
                        f"line {lineno}: part sizes sum to {sum(part_sizes)}, header says n={n}"
                    )
                for p, s in enumerate(part_sizes):
                    part_of.extend([p] * s)
                rows = [0] * n
            elif fields[0] == "e":
                if part_sizes is None:
                    raise GraphFormatError(f"line {lineno}: e line before q line")
                if len(fields) != 3:
                    raise GraphFormatError(f"line {lineno}: expected 'e <u> <v>'")
                try:
                    u, v = int(fields[1]), int(fields[2])
                except ValueError:
                    raise GraphFormatError(
                        f"line {lineno}: non-integer endpoint"
                    ) from None
                n = header[0]
                if not (0 <= u < n and 0 <= v < n):
                    raise GraphFormatError(
                        f"line {lineno}: edge ({u},{v}) out of range for n={n}"
                    )
                if u == v:
                    raise GraphFormatError(f"line {lineno}: self-loop ({u},{v})")
                if part_of[u] == part_of[v]:
                    raise GraphFormatError(
                        f"line {lineno}: edge ({u},{v}) joins two vertices of part {part_of[u]}"
                    )
                if (rows[u] >> v) & 1:
                    raise GraphFormatError(f"line {lineno}: duplicate edge ({u},{v})")
                rows[u] |= 1 << v
                rows[v] |= 1 << u
                n_edges += 1
            else:
                raise GraphFormatError(
                    f"line {lineno}: unknown line type {fields[0]!r}"
                )
    if header is None:
        raise GraphFormatError("missing p line")
    if part_sizes is None:
        raise GraphFormatError("missing q line")
    if n_edges != header[1]:
        raise GraphFormatError(f"{n_edges} e lines, header says m={header[1]}")
    return KPartiteGraph.from_rows(part_sizes, rows)


def write_graph(g: KPartiteGraph, path) -> None:
    """Write a graph in canonical kpg form (gzipped iff path ends in .gz)."""
    opener = gzip.open if str(path).endswith(".gz") else open
    with opener(path, "wt", encoding="utf-8") as f:
        f.write(f"p kpg {g.n} {g.num_edges()} {g.k}\n")
        f.write("q " + " ".join(str(s) for s in g.part_sizes()) + "\n")
        for u, v in g.edges():
            f.write(f"e {u} {v}\n")
