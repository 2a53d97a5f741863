from itertools import product

import numpy as np
import pytest

from cmramsey import best_witness, build_block, build_strip, meets_threshold, r3
from cmramsey.constructions import (
    BLOCK_PATTERN,
    BLUE,
    GREEN,
    RED,
    ConstructionError,
    block_spec,
    middle_regime_shift,
)
from cmramsey.matching import connected_matching_sizes


def test_strip_two_colors():
    m = build_strip((2, 2))
    assert m.cells.tolist() == [[0, 0], [1, 1]]


def test_strip_heights():
    m = build_strip((2, 3, 4))
    assert m.n == 6
    assert [int(r[0]) for r in m.cells] == [0, 1, 1, 2, 2, 2]
    assert (m.cells == m.cells[:, :1]).all()


def test_strips_avoid_small_grid():
    for arity in (2, 3):
        for t in product(range(2, 9), repeat=arity):
            sizes = connected_matching_sizes(build_strip(t))
            assert sizes == tuple(k - 1 for k in t)


def test_block_pattern_matches_listing():
    listed = {
        RED: [(1, 4), (2, 3), (3, 1), (3, 2)],
        BLUE: [(1, 2), (2, 1), (3, 3), (3, 4)],
        GREEN: [(1, 1), (1, 3), (2, 2), (2, 4)],
    }
    for color, pairs in listed.items():
        for a, b in pairs:
            assert BLOCK_PATTERN[a - 1][b - 1] == color
    assert sorted(x for row in BLOCK_PATTERN for x in row) == [0] * 4 + [1] * 4 + [2] * 4


def test_block_3450_sizes():
    spec = block_spec(3, 4, 5, 0)
    assert spec.n == 10
    assert spec.s_sizes == (4, 4, 2)
    assert spec.t_sizes == (3, 3, 2, 2)
    m = build_block(3, 4, 5, 0)
    assert m.cells[0, 0] == GREEN and m.cells[9, 9] == BLUE and m.cells[0, 9] == RED


def test_block_3560_sizes():
    spec = block_spec(3, 5, 6, 0)
    assert spec.n == 12 and spec.t_sizes == (4, 4, 2, 2)


def test_block_greedy_fill_when_t4_empty():
    # 2(m-l)-i = 2 - 2 = 0
    spec = block_spec(5, 6, 7, 2)
    assert spec.t_sizes[3] == 0
    assert sum(spec.t_sizes) == spec.n == 5 + 14 - 2 - 3
    assert spec.t_sizes == (5, 5, 4, 0)


@pytest.mark.parametrize(
    "params, fragment",
    [((2, 4, 5, 0), "k >= 3"), ((3, 3, 5, 0), "k < l < m"), ((3, 4, 5, 2), "0 <= i"), ((3, 4, 7, 0), "m <=")],
)
def test_block_rejects_bad_parameters(params, fragment):
    with pytest.raises(ConstructionError, match=fragment):
        build_block(*params)


def valid_blocks(max_side):
    for k in range(3, max_side + 1):
        for i in range(0, k - 1):
            for l in range(k + 1, max_side + 1):
                for m in range(l + 1, max_side + 1):
                    if 2 * m <= k + i - 1 + 2 * l and k + 2 * m - i - 3 <= max_side:
                        yield k, l, m, i


def test_block_spec_invariants():
    for k, l, m, i in valid_blocks(40):
        s = block_spec(k, l, m, i)
        assert sum(s.s_sizes) == s.n == sum(s.t_sizes)
        t4 = 2 * (m - l) - i
        if t4 > 0:
            assert s.t_sizes == (l - 1, l - 1, k - 1, t4) and t4 <= k - 1
        else:
            assert s.t_sizes[0] <= l - 1 and s.t_sizes[1] <= l - 1 and s.t_sizes[2] <= k - 1
            assert s.t_sizes[3] == 0


def test_blocks_avoid_up_to_side_24():
    count = 0
    for k, l, m, i in valid_blocks(24):
        red, blue, green = connected_matching_sizes(build_block(k, l, m, i))
        assert red < k and blue < l and green < m
        count += 1
    assert count > 100


def test_middle_shift_examples():
    assert middle_regime_shift(4, 5, 7) == 1
    with pytest.raises(ConstructionError):
        middle_regime_shift(3, 4, 5)


@pytest.mark.parametrize(
    "t, side, kind",
    [((3, 4, 6), 10, "strip"), ((3, 4, 5), 10, "block(i=0)"), ((4, 5, 7), 14, "block(i=1)")],
)
def test_best_witness_examples(t, side, kind):
    w = best_witness(t)
    assert (w.n, w.construction, w.optimal) == (side, kind, True)
    assert not meets_threshold(w.matrix, t).met


def test_best_witness_distinct_entries_is_tight():
    for t in product(range(2, 12), repeat=3):
        if len(set(t)) < 3:
            continue
        w = best_witness(t)
        assert w.n == r3(*t) - 1
        sizes = connected_matching_sizes(w.matrix)
        assert all(s < k for s, k in zip(sizes, t)), (t, sizes)


def test_best_witness_repeated_entries_flags_optimality():
    w = best_witness((6, 4, 4))  # r = 4l-2 = 14 > strip side 11 + 1
    assert w.construction == "strip" and not w.optimal
    assert w.n == 11 and r3(6, 4, 4) == 14
    w = best_witness((3, 5, 5))
    assert w.optimal and w.n == r3(3, 5, 5) - 1


def test_best_witness_two_colors():
    w = best_witness((3, 5))
    assert w.n == 6 and w.optimal
    assert np.array_equal(w.matrix.cells, build_strip((3, 5)).cells)
