"""Seeded random k-partite graph families for benchmarking.

Two families:

* Gruenert graphs ``(k, min_part, max_part, a, b)``: each part draws its size
  uniformly from [min_part, max_part]; each vertex v draws an affinity
  p_v uniformly from [a, b]; a cross-part pair (u, v) becomes an edge with
  probability (p_u + p_v) / 2.
* rare-attraction graphs ``(k, max_part, a)``: part i (1-based) has the fixed
  size 1 + floor(i * (max_part - 1) / k); with f affine in the part size,
  f(1) = 1 and f(max_part) = a, a cross-part pair whose parts have sizes s, t
  becomes an edge with probability f(min(s, t)).  Small parts attract edges,
  large parts starve.

Randomness comes from splitmix64 seeded with a caller-supplied 64-bit seed.
The draw order is part of the format: first one size draw per part in part
order (Gruenert only; a draw is consumed even when min_part == max_part),
then one affinity draw per vertex in id order (Gruenert only), then one coin
per cross-part pair in lexicographic (u, v) order; same-part pairs consume no
draw.  Probabilities and coins use the top 53 bits of each output, so a given
seed reproduces the same graph everywhere.  splitmix64's state after i draws
is seed + (i+1)*gamma, which lets the pair-coin block be computed in bulk
with numpy without changing the stream.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bitgraph import KPartiteGraph

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    """The splitmix64 generator (Steele, Lea, Flood 2014)."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + _GAMMA) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def uniform(self) -> float:
        """Uniform in [0, 1) with 53-bit resolution."""
        return (self.next_u64() >> 11) * 2.0**-53

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi], by rejection on the top bits.

        Always consumes at least one draw, even when lo == hi, so parameter
        changes never shift unrelated parts of the stream.
        """
        if lo > hi:
            raise ValueError(f"empty range [{lo}, {hi}]")
        span = hi - lo + 1
        bits = (span - 1).bit_length()
        while True:
            r = self.next_u64() >> (64 - bits)  # bits == 0 shifts everything out
            if r < span:
                return lo + r

    def bulk_uniforms(self, count: int) -> np.ndarray:
        """The next ``count`` uniform() values as one numpy array."""
        idx = np.arange(1, count + 1, dtype=np.uint64)
        with np.errstate(over="ignore"):
            z = np.uint64(self.state) + idx * np.uint64(_GAMMA)
            z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
            z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
            z = z ^ (z >> np.uint64(31))
        self.state = (self.state + count * _GAMMA) & _MASK64
        return (z >> np.uint64(11)).astype(np.float64) * 2.0**-53


@dataclass(frozen=True)
class GrunertParams:
    k: int
    min_part: int
    max_part: int
    a: float
    b: float

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be at least 1")
        if not 1 <= self.min_part <= self.max_part:
            raise ValueError("need 1 <= min_part <= max_part")
        if not 0.0 <= self.a <= self.b <= 1.0:
            raise ValueError("need 0 <= a <= b <= 1")


@dataclass(frozen=True)
class RareParams:
    k: int
    max_part: int
    a: float

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be at least 1")
        if self.max_part < 1:
            raise ValueError("max_part must be at least 1")
        if not 0.0 <= self.a <= 1.0:
            raise ValueError("need 0 <= a <= 1")


def rare_part_sizes(params: RareParams) -> list[int]:
    return [
        1 + (i * (params.max_part - 1)) // params.k
        for i in range(1, params.k + 1)
    ]


def _graph_from_pair_probs(
    sizes: list[int], probs: np.ndarray, rng: SplitMix64
) -> KPartiteGraph:
    """Flip one coin per cross-part pair in lexicographic (u, v) order.

    ``probs`` is an n-by-n matrix whose (u, v) entry is the edge probability;
    only cross-part upper-triangle entries are consulted.
    """
    n = sum(sizes)
    part = np.repeat(np.arange(len(sizes)), sizes)
    uu, vv = np.triu_indices(n, k=1)  # row-major == lexicographic (u, v)
    cross = part[uu] != part[vv]
    uu, vv = uu[cross], vv[cross]
    coins = rng.bulk_uniforms(len(uu))
    hit = coins < probs[uu, vv]
    rows = [0] * n
    for u, v in zip(uu[hit].tolist(), vv[hit].tolist()):
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return KPartiteGraph.from_rows(sizes, rows)


def gen_grunert(params: GrunertParams, seed: int) -> KPartiteGraph:
    rng = SplitMix64(seed)
    sizes = [rng.randint(params.min_part, params.max_part) for _ in range(params.k)]
    n = sum(sizes)
    span = params.b - params.a
    affinity = np.array(
        [params.a + rng.uniform() * span for _ in range(n)], dtype=np.float64
    )
    probs = (affinity[:, None] + affinity[None, :]) / 2.0
    return _graph_from_pair_probs(sizes, probs, rng)


def gen_rare(params: RareParams, seed: int) -> KPartiteGraph:
    rng = SplitMix64(seed)
    sizes = rare_part_sizes(params)
    if params.max_part == 1:
        f = np.ones(2, dtype=np.float64)
    else:
        s = np.arange(params.max_part + 1, dtype=np.float64)
        f = 1.0 + (params.a - 1.0) * (s - 1.0) / (params.max_part - 1.0)
    size_of = np.repeat(np.array(sizes), sizes)
    min_size = np.minimum(size_of[:, None], size_of[None, :])
    probs = f[min_size]
    return _graph_from_pair_probs(sizes, probs, rng)
