"""Exhaustive search for colorings of K_{n,n} avoiding every threshold.

A branch is cut as soon as some color already contains a connected matching
of its threshold size: adding edges never shrinks components or matchings,
so no avoiding completion is lost.
"""

from __future__ import annotations

import enum
import itertools
import logging
import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import kernels
from .constructions import best_witness
from .formula import ramsey_value, thresholds
from .graph import ColorMatrix
from .matching import connected_matching_sizes, meets_threshold

__all__ = [
    "Outcome",
    "SearchOutcome",
    "CertifyReport",
    "LegResult",
    "DEFAULT_BUDGET",
    "default_budget",
    "search_avoiding",
    "enumerate_avoiding",
    "frontier",
    "certify_value",
]

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**9
BUDGET_ENV = "CM_RAMSEY_BUDGET"


class Outcome(enum.Enum):
    WITNESS_FOUND = "WITNESS_FOUND"
    EXHAUSTED_NONE = "EXHAUSTED_NONE"
    BUDGET_EXCEEDED = "BUDGET_EXCEEDED"


@dataclass
class SearchOutcome:
    kind: Outcome
    n: int
    thresholds: tuple[int, ...]
    witness: ColorMatrix | None = None
    nodes_visited: int = 0
    prunes: int = 0
    elapsed: float = 0.0
    subproblems: int = 1
    nondeterministic_witness: bool = False

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "kind": self.kind.value,
            "n": self.n,
            "thresholds": list(self.thresholds),
            "nodes_visited": self.nodes_visited,
            "prunes": self.prunes,
            "elapsed": self.elapsed,
            "subproblems": self.subproblems,
            "nondeterministic_witness": self.nondeterministic_witness,
            "witness": None if self.witness is None else self.witness.cells.tolist(),
        }


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw:
        try:
            return int(float(raw))
        except ValueError:
            raise ValueError(f"{BUDGET_ENV}={raw!r} is not a number") from None
    return DEFAULT_BUDGET


def _color_precedence(t: tuple[int, ...], symmetry: bool) -> np.ndarray:
    """prev[x] = nearest lower color with the same threshold, else -1."""
    prev = np.full(len(t), -1, dtype=np.int64)
    if symmetry:
        for x in range(len(t)):
            for y in range(x - 1, -1, -1):
                if t[y] == t[x]:
                    prev[x] = y
                    break
    return prev


class _Job:
    """Inputs shared by every kernel call of one search."""

    def __init__(self, n, t, symmetry, budget):
        self.n = n
        self.t = t
        self.thr = np.asarray(t, dtype=np.int64)
        self.prev = _color_precedence(t, symmetry)
        self.symmetry = symmetry
        self.budget = budget
        self.shared = np.zeros(2, dtype=np.int64)

    def run(self, prefix, collect_depth=-1, capacity=0):
        n = self.n
        out = np.zeros((capacity, max(collect_depth, 0)), dtype=np.int8)
        witness = np.full((n, n), kernels.UNASSIGNED, dtype=np.int8)
        counters = np.zeros(3, dtype=np.int64)
        status = kernels.search_kernel(
            n, len(self.t), self.thr, self.prev, self.symmetry, prefix,
            collect_depth, out, self.budget, self.shared, witness, counters,
        )
        return status, witness, counters, out


def _frontier(job: _Job, depth: int):
    """Count, then materialize, every surviving assignment of the first ``depth`` cells."""
    empty = np.zeros(0, dtype=np.int8)
    status, witness, counters, _ = job.run(empty, depth, 0)
    found = int(counters[2])
    if status != kernels.EXHAUSTED or not found:
        return status, witness, counters, np.zeros((0, depth), dtype=np.int8)
    job.shared[:] = 0
    _, _, _, prefixes = job.run(empty, depth, found)
    return status, witness, counters, prefixes


def frontier(n: int, t: Sequence[int], depth: int, symmetry: bool = True) -> np.ndarray:
    """Row-major prefixes of length ``depth`` that survive pruning and symmetry.

    These are the subproblems handed to worker threads; each row is one
    prefix of cell colors.
    """
    t = thresholds(t)
    if not 0 <= depth < n * n:
        raise ValueError(f"depth must lie in [0, {n * n})")
    _, _, _, prefixes = _frontier(_Job(n, t, symmetry, default_budget()), depth)
    return prefixes


def search_avoiding(
    n: int,
    t: Sequence[int],
    budget: int | None = None,
    threads: int = 1,
    symmetry: bool = True,
    seed: int = 0,
) -> SearchOutcome:
    """Find a coloring of K_{n,n} with no color i holding a t_i-connected matching.

    Returns WITNESS_FOUND (with the coloring), EXHAUSTED_NONE when none
    exists, or BUDGET_EXCEEDED once more than ``budget`` nodes were visited.
    """
    if n < 1:
        raise ValueError("n must be positive")
    t = thresholds(t)
    budget = default_budget() if budget is None else int(budget)
    job = _Job(n, t, symmetry, budget)
    start = time.perf_counter()
    empty = np.zeros(0, dtype=np.int8)
    total = n * n
    depth = min(2 * n, total)

    if threads <= 1 or n < 2:
        status, witness, counters, _ = job.run(empty)
        statuses = [status]
        witnesses = [witness]
        nodes, prunes, subproblems = int(counters[0]), int(counters[1]), 1
    else:
        status, witness, counters, tasks = _frontier(job, depth)
        nodes, prunes = int(counters[0]), int(counters[1])
        statuses, witnesses = [status], [witness]
        subproblems = len(tasks)
        if status == kernels.EXHAUSTED and subproblems:
            job.shared[:] = [0, nodes]
            tasks = list(tasks)
            random.Random(seed).shuffle(tasks)
            with ThreadPoolExecutor(max_workers=threads) as pool:
                results = list(pool.map(job.run, tasks))
            for st, wit, cnt, _ in results:
                statuses.append(st)
                witnesses.append(wit)
                nodes += int(cnt[0])
                prunes += int(cnt[1])

    elapsed = time.perf_counter() - start
    outcome = SearchOutcome(
        Outcome.EXHAUSTED_NONE, n, t, None, nodes, prunes, elapsed, subproblems,
        nondeterministic_witness=threads > 1,
    )
    if kernels.FOUND in statuses:
        cells = witnesses[statuses.index(kernels.FOUND)]
        m = ColorMatrix(cells, len(t))
        report = meets_threshold(m, t)
        if report.met:
            raise RuntimeError(f"search returned a coloring that meets thresholds {t}: {report.best_sizes}")
        outcome.kind = Outcome.WITNESS_FOUND
        outcome.witness = m
    elif kernels.OVER_BUDGET in statuses:
        outcome.kind = Outcome.BUDGET_EXCEEDED
    log.debug("search n=%d t=%s -> %s (%d nodes)", n, t, outcome.kind.value, nodes)
    return outcome


def enumerate_avoiding(n: int, t: Sequence[int]) -> ColorMatrix | None:
    """Unpruned reference: try all c^(n*n) colorings, checking each from scratch."""
    t = thresholds(t)
    c = len(t)
    for flat in itertools.product(range(c), repeat=n * n):
        cells = np.array(flat, dtype=np.int8).reshape(n, n)
        m = ColorMatrix(cells, c)
        if all(s < k for s, k in zip(connected_matching_sizes(m), t)):
            return m
    return None


@dataclass
class LegResult:
    n: int
    expected: Outcome
    kind: Outcome
    method: str
    nodes: int = 0
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return self.kind == self.expected


@dataclass
class CertifyReport:
    thresholds: tuple[int, ...]
    value: int
    lower: LegResult
    upper: LegResult
    notes: list[str] = field(default_factory=list)

    @property
    def certified(self) -> bool:
        return self.lower.ok and self.upper.ok

    @property
    def refuted(self) -> bool:
        return (self.lower.kind == Outcome.EXHAUSTED_NONE) or (
            self.upper.kind == Outcome.WITNESS_FOUND
        )

    @property
    def verdict(self) -> str:
        if self.certified:
            return "CERTIFIED"
        if self.refuted:
            return "REFUTED"
        return "INCOMPLETE"

    def to_dict(self) -> dict:
        def leg(r: LegResult):
            return {
                "n": r.n, "expected": r.expected.value, "kind": r.kind.value,
                "method": r.method, "nodes": r.nodes, "elapsed": r.elapsed, "ok": r.ok,
            }

        return {
            "schema": 1,
            "thresholds": list(self.thresholds),
            "value": self.value,
            "verdict": self.verdict,
            "lower": leg(self.lower),
            "upper": leg(self.upper),
            "notes": self.notes,
        }


def certify_value(
    t: Sequence[int],
    budget: int | None = None,
    threads: int = 1,
    symmetry: bool = True,
) -> CertifyReport:
    """Check the closed-form value v: an avoiding coloring at v-1, none at v."""
    t = thresholds(t)
    v = ramsey_value(t)
    notes = []

    low = search_avoiding(v - 1, t, budget=budget, threads=threads, symmetry=symmetry)
    lower = LegResult(v - 1, Outcome.WITNESS_FOUND, low.kind, "search", low.nodes_visited, low.elapsed)
    if low.kind == Outcome.BUDGET_EXCEEDED:
        w = best_witness(t)
        if w.n == v - 1 and not meets_threshold(w.matrix, t).met:
            lower = LegResult(v - 1, Outcome.WITNESS_FOUND, Outcome.WITNESS_FOUND, w.construction)
            notes.append(f"lower leg taken from the {w.construction} construction")

    up = search_avoiding(v, t, budget=budget, threads=threads, symmetry=symmetry)
    upper = LegResult(v, Outcome.EXHAUSTED_NONE, up.kind, "search", up.nodes_visited, up.elapsed)
    if up.kind == Outcome.BUDGET_EXCEEDED:
        notes.append("upper leg ran out of budget")
    return CertifyReport(t, v, lower, upper, notes)
