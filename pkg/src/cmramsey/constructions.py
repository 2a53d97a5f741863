"""Extremal colorings that certify lower bounds on r(k1, ..., kp)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .formula import REGIME_FIRST, REGIME_MIDDLE, r3_regime, ramsey_value, thresholds
from .graph import ColorMatrix

__all__ = [
    "RED",
    "BLUE",
    "GREEN",
    "BLOCK_PATTERN",
    "BlockSpec",
    "ConstructionError",
    "Witness",
    "block_spec",
    "build_strip",
    "build_block",
    "best_witness",
    "middle_regime_shift",
]

RED, BLUE, GREEN = 0, 1, 2

# BLOCK_PATTERN[a][b] is the color of every edge between S_{a+1} and T_{b+1}
BLOCK_PATTERN = (
    (GREEN, BLUE, GREEN, RED),
    (BLUE, GREEN, RED, GREEN),
    (RED, RED, BLUE, BLUE),
)


class ConstructionError(ValueError):
    pass


def build_strip(t: Sequence[int]) -> ColorMatrix:
    """Rows split into contiguous strips of height t_i - 1, strip i all color i."""
    t = thresholds(t)
    heights = [k - 1 for k in t]
    n = sum(heights)
    row_colors = np.repeat(np.arange(len(t), dtype=np.int8), heights)
    cells = np.broadcast_to(row_colors[:, None], (n, n))
    return ColorMatrix(cells, len(t))


@dataclass(frozen=True)
class BlockSpec:
    k: int
    l: int
    m: int
    i: int
    s_sizes: tuple[int, int, int]
    t_sizes: tuple[int, int, int, int]

    @property
    def n(self) -> int:
        return self.k + 2 * self.m - self.i - 3


def block_spec(k: int, l: int, m: int, i: int) -> BlockSpec:
    problems = []
    if not 3 <= k:
        problems.append("need k >= 3")
    if not k < l < m:
        problems.append("need k < l < m")
    if not 0 <= i <= k - 2:
        problems.append("need 0 <= i <= k-2")
    if not 2 * m <= k + i - 1 + 2 * l:
        problems.append("need m <= (k+i-1)/2 + l")
    if problems:
        raise ConstructionError(f"invalid block parameters ({k},{l},{m},{i}): " + "; ".join(problems))
    n = k + 2 * m - i - 3
    s_sizes = (m - 1, m - 1, k - 1 - i)
    t4 = 2 * (m - l) - i
    if t4 > 0:
        t_sizes = (l - 1, l - 1, k - 1, t4)
    else:
        left = n
        fill = []
        for cap in (l - 1, l - 1, k - 1):
            take = min(cap, left)
            fill.append(take)
            left -= take
        assert left == 0
        t_sizes = (*fill, 0)
    return BlockSpec(k, l, m, i, s_sizes, t_sizes)


def build_block(k: int, l: int, m: int, i: int) -> ColorMatrix:
    """Three row parts by four column parts, colored by ``BLOCK_PATTERN``."""
    spec = block_spec(k, l, m, i)
    row_part = np.repeat(np.arange(3), spec.s_sizes)
    col_part = np.repeat(np.arange(4), spec.t_sizes)
    pattern = np.array(BLOCK_PATTERN, dtype=np.int8)
    return ColorMatrix(pattern[row_part[:, None], col_part[None, :]], 3)


def middle_regime_shift(k: int, l: int, m: int) -> int:
    """The i with k + 2m - i - 2 == 2k + 2l - 3, checked against the block constraints."""
    i = 2 * m - 2 * l - k + 1
    if not 1 <= i <= k - 2:
        raise ConstructionError(f"shift i={i} outside [1, k-2] for ({k},{l},{m})")
    block_spec(k, l, m, i)
    return i


@dataclass(frozen=True)
class Witness:
    matrix: ColorMatrix
    construction: str
    thresholds: tuple[int, ...]
    value: int
    optimal: bool

    @property
    def n(self) -> int:
        return self.matrix.n


def best_witness(t: Sequence[int]) -> Witness:
    """Best known avoiding coloring for t; optimal means side r(t) - 1.

    Colors follow the order of ``t`` (color j avoids a t[j]-connected matching).
    """
    t = thresholds(t)
    value = ramsey_value(t)
    if len(t) == 2:
        m = build_strip(t)
        return Witness(m, "strip", t, value, m.n == value - 1)

    regime = r3_regime(*t)
    a, b, c = regime.sorted_entries
    if a < b < c and regime.label in (REGIME_FIRST, REGIME_MIDDLE):
        i = 0 if regime.label == REGIME_FIRST else middle_regime_shift(a, b, c)
        m = build_block(a, b, c, i)
        # sorted position p carries threshold sorted(t)[p]; send it to that color of t
        order = sorted(range(3), key=lambda j: t[j])
        m = m.permute_colors(order)
        return Witness(m, f"block(i={i})", t, value, m.n == value - 1)

    m = build_strip(t)
    return Witness(m, "strip", t, value, m.n == value - 1)
