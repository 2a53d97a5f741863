"""Acceptance criteria, each checked at its stated tolerance.

Timings exclude JIT compilation: the ``warm`` fixture compiles every kernel
before any clock starts.
"""

import itertools
import time

import numpy as np
import pytest

from cmramsey import (
    ColorMatrix,
    Outcome,
    build_block,
    build_strip,
    certify_value,
    components,
    build_color_class,
    lower_bound_generic,
    meets_threshold,
    r3,
    search_avoiding,
)
from cmramsey.matching import brute_force_min_cover, connected_matching_sizes, max_matching

SEED = 424242


@pytest.fixture(scope="module", autouse=True)
def warm():
    certify_value((2, 2))
    search_avoiding(3, (2, 2, 2))
    meets_threshold(build_block(3, 4, 5, 0), (3, 4, 5))


def timed(fn):
    start = time.perf_counter()
    value = fn()
    return value, time.perf_counter() - start


# 1. Koenig duality on random small colorings

def koenig_check(rng, samples):
    checked = 0
    for _ in range(samples):
        n = int(rng.integers(1, 7))
        colors = int(rng.integers(2, 4))
        m = ColorMatrix(rng.integers(0, colors, size=(n, n)), colors)
        for c in range(colors):
            g = build_color_class(m, c)
            for comp in components(g).components:
                cert = max_matching(g, comp)
                if not (cert.size == len(cert.cover) == brute_force_min_cover(g, comp)):
                    return False, checked
                for u in comp.side1:
                    for w in g.neighbors1(u):
                        if u not in cert.cover and n + w not in cert.cover:
                            return False, checked
                checked += 1
    return True, checked


def test_criterion_1_koenig(criterion):
    rng = np.random.default_rng(SEED)
    (ok, checked), elapsed = timed(lambda: koenig_check(rng, 1000))
    passed = ok and elapsed < 10
    criterion(1, passed, f"koenig duality, 1000 colorings, {checked} components, {elapsed:.2f}s")
    assert passed


# 2-4. small values by exhaustive search

def test_criterion_2_r22(criterion):
    rep, elapsed = timed(lambda: certify_value((2, 2)))
    passed = (
        rep.certified and rep.lower.n == 2 and rep.upper.n == 3
        and rep.lower.method == "search" and elapsed < 1
    )
    criterion(2, passed, f"r(2,2)=3 {rep.verdict}, {elapsed:.3f}s")
    assert passed


@pytest.mark.parametrize("t, value, cells", [((2, 3), 4, 16), ((3, 3), 5, 25)])
def test_criterion_3_two_color(criterion, t, value, cells):
    rep, elapsed = timed(lambda: certify_value(t))
    passed = (
        rep.certified and rep.value == value and rep.upper.n == value
        and rep.lower.method == "search" and rep.upper.nodes <= 2**cells and elapsed < 60
    )
    criterion(f"3{t}", passed, f"r{t}={value} {rep.verdict}, upper leg {rep.upper.nodes} nodes, {elapsed:.2f}s")
    assert passed


def test_criterion_4_r222(criterion):
    low, t_low = timed(lambda: search_avoiding(3, (2, 2, 2), threads=1))
    up, t_up = timed(lambda: search_avoiding(4, (2, 2, 2), threads=1))
    passed = (
        low.kind == Outcome.WITNESS_FOUND and up.kind == Outcome.EXHAUSTED_NONE
        and up.nodes_visited <= 3**16 and t_low + t_up < 600
    )
    criterion(4, passed, f"r(2,2,2)=4, n=4 exhausted in {up.nodes_visited} nodes, {t_low + t_up:.3f}s")
    assert passed


# 5. lower-bound constructions up to side 40

def block_params(max_side):
    for k in range(3, max_side):
        for l in range(k + 1, max_side):
            for m in range(l + 1, max_side):
                for i in range(k - 1):
                    if 2 * m <= k + i - 1 + 2 * l and k + 2 * m - i - 3 <= max_side:
                        yield k, l, m, i


def strip_params(max_side):
    for p in (2, 3):
        for t in itertools.product(range(2, max_side + 2), repeat=p):
            if sum(x - 1 for x in t) <= max_side:
                yield t


def constructions_avoid(max_side):
    bad = []
    blocks = strips = 0
    for k, l, m, i in block_params(max_side):
        blocks += 1
        if meets_threshold(build_block(k, l, m, i), (k, l, m)).met:
            bad.append(("block", k, l, m, i))
    for t in strip_params(max_side):
        strips += 1
        if meets_threshold(build_strip(t), t).met:
            bad.append(("strip", t))
    return bad, blocks, strips


def test_criterion_5_constructions(criterion):
    (bad, blocks, strips), elapsed = timed(lambda: constructions_avoid(40))
    passed = not bad and elapsed < 60
    criterion(5, passed, f"{blocks} blocks + {strips} strips avoid, {len(bad)} failures, {elapsed:.2f}s")
    assert passed, bad[:10]


# 6. formula properties

def formula_properties(lo, hi):
    """Return the list of violated properties over lo <= k,l,m <= hi."""
    rng = range(lo, hi + 1)
    grid = {t: r3(*t) for t in itertools.product(rng, repeat=3)}
    failures = {}

    def fail(name, t):
        failures.setdefault(name, []).append(t)

    for t, v in grid.items():
        if any(grid[p] != v for p in itertools.permutations(t)):
            fail("permutation invariance", t)
        for j in range(3):
            if t[j] < hi:
                nxt = tuple(x + 1 if q == j else x for q, x in enumerate(t))
                if grid[nxt] < v:
                    fail("monotonicity", (t, nxt))
        a, b, c = sorted(t)
        bound = lower_bound_generic(t)
        if v < bound:
            fail("dominance", t)
        if (v == bound) != (c >= a + b - 1):
            fail("equality iff max >= sum of others - 1", t)
    for k, l, m in grid:
        if not k < l < m:
            continue
        if 2 * m == 2 * l + k - 1 and not (k + 2 * m - 2 == 2 * k + 2 * l - 3 == grid[(k, l, m)]):
            fail("boundary m = l + (k-1)/2", (k, l, m))
        if m == k + l - 1 and not (2 * k + 2 * l - 3 == k + l + m - 2 == grid[(k, l, m)]):
            fail("boundary m = k + l - 1", (k, l, m))
    return failures


def test_criterion_6_formula(criterion):
    failures, elapsed = timed(lambda: formula_properties(2, 30))
    passed = not failures and elapsed < 1
    detail = ", ".join(f"{name}: {len(v)} violations (e.g. {v[0]})" for name, v in failures.items())
    criterion(6, passed, f"formula grid 2..30, {elapsed:.3f}s" + (f"; {detail}" if detail else ""))
    assert passed, detail


# 7. pruned symmetric search vs brute force

def search_soundness():
    mismatches = []
    checked = 0
    for p in (2, 3):
        tuples = list(itertools.product((2, 3), repeat=p))
        for n in (1, 2, 3):
            sizes = np.array([
                connected_matching_sizes(ColorMatrix(np.array(flat).reshape(n, n), p))
                for flat in itertools.product(range(p), repeat=n * n)
            ])
            for t in tuples:
                exists = bool(np.any(np.all(sizes < np.array(t), axis=1)))
                kind = search_avoiding(n, t, symmetry=True).kind
                expected = Outcome.WITNESS_FOUND if exists else Outcome.EXHAUSTED_NONE
                checked += 1
                if kind != expected:
                    mismatches.append((n, t, kind.value, expected.value))
    return mismatches, checked


def test_criterion_7_soundness(criterion):
    (mismatches, checked), elapsed = timed(search_soundness)
    passed = not mismatches and elapsed < 60
    criterion(7, passed, f"{checked} (n, t) cases agree with enumeration, {len(mismatches)} mismatches, {elapsed:.2f}s")
    assert passed, mismatches
