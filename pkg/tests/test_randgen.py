import numpy as np
import pytest

from kpkc.randgen import (
    GrunertParams,
    RareParams,
    SplitMix64,
    gen_grunert,
    gen_rare,
    rare_part_sizes,
)


def test_splitmix64_known_values():
    # reference sequence for seed 1234567 (splitmix64 as in the public domain
    # C version by Vigna)
    rng = SplitMix64(1234567)
    got = [rng.next_u64() for _ in range(3)]
    assert got == [
        6457827717110365317,
        3203168211198807973,
        9817491932198370423,
    ]


def test_bulk_matches_scalar():
    a = SplitMix64(42)
    b = SplitMix64(42)
    scalar = [a.uniform() for _ in range(1000)]
    bulk = b.bulk_uniforms(1000)
    assert np.array_equal(np.array(scalar), bulk)
    assert a.state == b.state
    # and the streams stay aligned afterwards
    assert a.next_u64() == b.next_u64()


def test_randint_bounds_and_draw_consumption():
    rng = SplitMix64(7)
    vals = [rng.randint(3, 9) for _ in range(200)]
    assert all(3 <= v <= 9 for v in vals)
    assert set(vals) == set(range(3, 10))
    # degenerate range still consumes exactly one draw
    a = SplitMix64(11)
    b = SplitMix64(11)
    a.randint(5, 5)
    b.next_u64()
    assert a.state == b.state


def test_param_validation():
    with pytest.raises(ValueError):
        GrunertParams(0, 1, 2, 0.1, 0.2)
    with pytest.raises(ValueError):
        GrunertParams(2, 3, 2, 0.1, 0.2)
    with pytest.raises(ValueError):
        GrunertParams(2, 1, 2, 0.5, 0.2)
    with pytest.raises(ValueError):
        RareParams(2, 0, 0.5)
    with pytest.raises(ValueError):
        RareParams(2, 2, 1.5)


def test_grunert_deterministic():
    p = GrunertParams(4, 2, 5, 0.3, 0.8)
    g1 = gen_grunert(p, 99)
    g2 = gen_grunert(p, 99)
    assert g1.part_sizes() == g2.part_sizes()
    assert list(g1.edges()) == list(g2.edges())
    g3 = gen_grunert(p, 100)
    assert list(g1.edges()) != list(g3.edges())


def test_grunert_extremes():
    comp = gen_grunert(GrunertParams(3, 2, 2, 1.0, 1.0), 5)
    assert comp.num_edges() == 3 * (2 * 2)
    empty = gen_grunert(GrunertParams(3, 2, 2, 0.0, 0.0), 5)
    assert empty.num_edges() == 0


def test_grunert_sizes_in_range():
    p = GrunertParams(10, 2, 7, 0.5, 0.5)
    for seed in range(10):
        sizes = gen_grunert(p, seed).part_sizes()
        assert len(sizes) == 10
        assert all(2 <= s <= 7 for s in sizes)


def test_rare_part_sizes_formula():
    assert rare_part_sizes(RareParams(5, 5, 0.1)) == [1, 2, 3, 4, 5]
    assert rare_part_sizes(RareParams(4, 1, 0.5)) == [1, 1, 1, 1]
    sizes = rare_part_sizes(RareParams(50, 50, 0.1))
    assert sizes[0] == 1 and sizes[-1] == 50
    assert sizes == [1 + (i * 49) // 50 for i in range(1, 51)]


def test_rare_deterministic_and_extremes():
    p = RareParams(5, 4, 0.3)
    g1 = gen_rare(p, 1)
    g2 = gen_rare(p, 1)
    assert list(g1.edges()) == list(g2.edges())

    comp = gen_rare(RareParams(4, 3, 1.0), 2)
    sizes = comp.part_sizes()
    expected = sum(
        sizes[p] * sizes[q]
        for p in range(4)
        for q in range(p + 1, 4)
    )
    assert comp.num_edges() == expected

    # a = 0: pairs of parts both of maximal size never connect
    g = gen_rare(RareParams(6, 6, 0.0), 3)
    szs = g.part_sizes()
    big = [p for p, s in enumerate(szs) if s == 6]
    for i, p in enumerate(big):
        for q in big[i + 1 :]:
            for u in g.part_members(p):
                for v in g.part_members(q):
                    assert not g.are_adjacent(u, v)


def test_rare_size_one_parts_connect_everywhere():
    # f(1) = 1, so any pair involving a size-1 part is an edge
    g = gen_rare(RareParams(6, 6, 0.0), 9)
    ones = [p for p, s in enumerate(g.part_sizes()) if s == 1]
    assert ones, "expected at least one singleton part"
    p = ones[0]
    (u,) = g.part_members(p)
    for v in range(g.n):
        if g.part_of(v) != p:
            assert g.are_adjacent(u, v)


def test_grunert_density_tracks_parameters():
    lo = gen_grunert(GrunertParams(6, 6, 6, 0.1, 0.2), 4)
    hi = gen_grunert(GrunertParams(6, 6, 6, 0.8, 0.9), 4)
    possible = lo.n * lo.n // 2  # rough scale, same for both
    assert hi.num_edges() > lo.num_edges()
    assert 0 < lo.num_edges() < possible
