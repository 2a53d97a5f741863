"""Exact values of r(k, l) and r(k, l, m).

All case boundaries such as ``l <= (k+1)/2`` are compared after clearing
denominators, so no floating point is involved.
"""

from __future__ import annotations

from typing import NamedTuple, Sequence

__all__ = [
    "ThresholdError",
    "thresholds",
    "r2",
    "r3",
    "r3_regime",
    "ramsey_value",
    "lower_bound_generic",
    "Regime",
    "REGIME_FIRST",
    "REGIME_MIDDLE",
    "REGIME_SUM",
]

REGIME_FIRST = "k+2m-2"
REGIME_MIDDLE = "2k+2l-3"
REGIME_SUM = "k+l+m-2"
# r(k,l,l) cases for repeated entries
REPEATED_LOW = "r(k,l,l)=k+2l-2 [l<=(k+1)/2]"
REPEATED_MID = "r(k,l,l)=4l-2"
REPEATED_HIGH = "r(k,l,l)=2k+l-2"
REPEATED_BIG = "r(k,l,l)=k+2l-2 [k<=l]"
TWO_COLOR = "k+l-1"


class ThresholdError(ValueError):
    pass


class Regime(NamedTuple):
    value: int
    label: str
    sorted_entries: tuple[int, ...]


def thresholds(entries: Sequence[int], arity: tuple[int, ...] = (2, 3)) -> tuple[int, ...]:
    """Validate a threshold vector: 2 or 3 integers, each >= 2."""
    t = tuple(entries)
    if len(t) not in arity:
        raise ThresholdError(f"expected {' or '.join(map(str, arity))} thresholds, got {len(t)}")
    for x in t:
        if isinstance(x, bool) or int(x) != x:
            raise ThresholdError(f"threshold {x!r} is not an integer")
        if x < 2:
            raise ThresholdError(f"threshold {x} < 2")
    return tuple(int(x) for x in t)


def r2(k: int, l: int) -> int:
    a, b = sorted(thresholds((k, l), arity=(2,)))
    return a + b - 1


def r3_regime(k: int, l: int, m: int) -> Regime:
    a, b, c = srt = tuple(sorted(thresholds((k, l, m), arity=(3,))))
    if b == c:
        # r(a, b, b) with a <= b
        return Regime(a + 2 * b - 2, REPEATED_BIG, srt)
    if a == b:
        # r(c, a, a) with a < c
        if 2 * a <= c + 1:
            return Regime(c + 2 * a - 2, REPEATED_LOW, srt)
        if 3 * a <= 2 * c:
            return Regime(4 * a - 2, REPEATED_MID, srt)
        return Regime(2 * c + a - 2, REPEATED_HIGH, srt)
    # a < b < c; the first two regimes are empty when a == 2
    if 2 * c <= 2 * b + a - 1:
        return Regime(a + 2 * c - 2, REGIME_FIRST, srt)
    if c < a + b - 1:
        return Regime(2 * a + 2 * b - 3, REGIME_MIDDLE, srt)
    return Regime(a + b + c - 2, REGIME_SUM, srt)


def r3(k: int, l: int, m: int) -> int:
    return r3_regime(k, l, m).value


def ramsey_value(t: Sequence[int]) -> int:
    t = thresholds(t)
    return r2(*t) if len(t) == 2 else r3(*t)


def lower_bound_generic(t: Sequence[int]) -> int:
    """Strip-coloring bound: sum(t) - p + 1."""
    t = tuple(t)
    if not t or any(int(x) != x or x < 2 for x in t):
        raise ThresholdError("thresholds must be integers >= 2")
    return sum(t) - len(t) + 1
