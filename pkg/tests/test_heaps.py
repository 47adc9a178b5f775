"""Hard dimers, heaps, pyramids, and the walk<->pyramid bijection."""

import pytest

from planarwalks.algebra import ONE, Poly
from planarwalks.heaps import (Heap, enumerate_hard_dimers, enumerate_pyramids,
                               hard_dimer_gf, heap_weight_sum, identity_matrix,
                               inversion_matrix, mat_mul, pyramid_to_walk,
                               walk_to_pyramid)
from planarwalks.walks import (all_walks, positive_walk_gf, symbolic_env,
                               walk_gf, walk_weight)


def R(i):
    return Poly.var(f"R_{i}")


def test_hard_dimer_base_cases():
    env = symbolic_env()
    assert hard_dimer_gf(0, -1, 0, env) == ONE
    assert hard_dimer_gf(0, 5, 0, env) == ONE
    assert hard_dimer_gf(0, 1, 1, env) == R(1)
    assert hard_dimer_gf(0, 2, 1, env) == R(1) + R(2)
    assert hard_dimer_gf(0, 3, 2, env) == R(1) * R(3)


@pytest.mark.parametrize("b,k", [(3, 1), (4, 2), (6, 2), (7, 3), (7, 4)])
def test_hard_dimer_gf_matches_enumeration(b, k):
    env = symbolic_env()
    total = Poly.zero()
    for config in enumerate_hard_dimers(0, b, k):
        w = ONE
        for s in config.stripes:
            w = w * R(s)
        total = total + w
    assert hard_dimer_gf(0, b, k, env) == total


def test_maximally_packed_segment_unique():
    env = symbolic_env()
    assert hard_dimer_gf(0, 5, 3, env) == R(1) * R(3) * R(5)


@pytest.mark.parametrize("half", [False, True])
@pytest.mark.parametrize("base,k_max", [(1, 5), (3, 5)])
def test_pyramid_counts_equal_walks(half, base, k_max):
    env = symbolic_env()
    a, b = 0, base
    for k in range((base + 1) // 2, k_max + 1):
        heaps = enumerate_pyramids(a, b, k, half=half)
        want = (positive_walk_gf(a, b, 2 * k - 1, env) if half
                else walk_gf(a, b, 2 * k - 1, env))
        assert heap_weight_sum(heaps, env) == want


def test_pyramid_requires_minimum_dimers():
    assert enumerate_pyramids(0, 3, 1) == []
    assert len(enumerate_pyramids(0, 3, 2)) == 1  # the bare projection


def test_walk_to_pyramid_roundtrip_small():
    for base in (1, 3):
        for length in range((base + 1), 8, 2):
            for w in all_walks(0, base, length):
                h = walk_to_pyramid(w)
                assert pyramid_to_walk(h) == w


def test_pyramid_to_walk_roundtrip_small():
    env = symbolic_env()
    for base in (1, 3):
        for k in range((base + 1) // 2, 4):
            for h in enumerate_pyramids(0, base, k):
                w = pyramid_to_walk(h)
                assert walk_to_pyramid(w) == h
                assert walk_weight(w.start, w.steps, env) == h.weight(env)


def test_size_three_inversion_matrices():
    env = symbolic_env()
    a = 0
    d = inversion_matrix("D", a, 3, env)
    z = inversion_matrix("Z", a, 3, env)
    s123 = R(a + 1) + R(a + 2) + R(a + 3)
    assert d[0] == [ONE, Poly.zero(), Poly.zero()]
    assert d[1] == [-R(a + 1), ONE, Poly.zero()]
    assert d[2] == [R(a + 1) * R(a + 3), -s123, ONE]
    assert z[0] == [ONE, Poly.zero(), Poly.zero()]
    assert z[1] == [R(a + 1), ONE, Poly.zero()]
    assert z[2] == [R(a + 1) * (R(a + 1) + R(a + 2)), s123, ONE]


def test_matrices_are_mutually_inverse():
    env = symbolic_env()
    for a in (0, 2):
        d = inversion_matrix("D", a, 5, env)
        z = inversion_matrix("Z", a, 5, env)
        assert mat_mul(d, z, env.ctx) == identity_matrix(5)
        assert mat_mul(z, d, env.ctx) == identity_matrix(5)


def test_heap_weight_skips_projection():
    env = symbolic_env()
    h = Heap(frozenset({(1, 0), (1, -1)}))
    # column 0 is the projection; only the column -1 dimer is weighted
    assert h.weight(env) == R(1)
