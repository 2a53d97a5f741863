"""Maximum matchings, König covers and connected-matching sizes per color."""

from __future__ import annotations

from dataclasses import dataclass
import numpy as np

from . import kernels
from .graph import (
    ColorClassGraph,
    ColorMatrix,
    Component,
    build_color_class,
    components,
)

__all__ = [
    "MatchingCertificate",
    "ColorProfile",
    "ConnectedMatchingProfile",
    "ColorReport",
    "WitnessReport",
    "max_matching",
    "brute_force_min_cover",
    "connected_matching_profile",
    "connected_matching_sizes",
    "meets_threshold",
    "BRUTE_FORCE_LIMIT",
]

BRUTE_FORCE_LIMIT = 20


@dataclass(frozen=True)
class MatchingCertificate:
    """A maximum matching of one component and a minimum cover of equal size.

    Cover vertices use the global index space (V2 vertex w is n + w).
    """

    matching: tuple[tuple[int, int], ...]
    cover: frozenset[int]
    component_label: int

    @property
    def size(self) -> int:
        return len(self.matching)


def _active_mask(n: int, comp: Component) -> np.ndarray:
    active = np.zeros(n, dtype=np.bool_)
    active[list(comp.side1)] = True
    return active


def max_matching(g: ColorClassGraph, comp: Component) -> MatchingCertificate:
    n = g.n
    active = _active_mask(n, comp)
    match1, match2, _ = kernels.hopcroft_karp(g.side1_adj, n, active)
    cover1, cover2 = kernels.koenig_cover(g.side1_adj, n, active, match1, match2)
    matching = tuple((int(u), int(match1[u])) for u in comp.side1 if match1[u] != -1)
    cover = frozenset(int(u) for u in np.flatnonzero(cover1)) | frozenset(
        n + int(w) for w in np.flatnonzero(cover2)
    )
    return MatchingCertificate(matching, cover, comp.label)


def brute_force_min_cover(g: ColorClassGraph, comp: Component) -> int:
    """Minimum vertex cover size of ``comp`` by enumerating subsets, smallest first."""
    n = g.n
    verts = comp.vertices(n)
    if len(verts) > BRUTE_FORCE_LIMIT:
        raise ValueError(
            f"component has {len(verts)} vertices; brute force is limited to {BRUTE_FORCE_LIMIT}"
        )
    pos = {v: j for j, v in enumerate(verts)}
    masks = np.arange(1 << len(verts), dtype=np.int64)
    covers = np.ones(masks.shape, dtype=np.bool_)
    for u in comp.side1:
        for w in g.neighbors1(u):
            edge = (1 << pos[u]) | (1 << pos[n + w])
            covers &= (masks & edge) != 0
    sizes = sum((masks >> j) & 1 for j in range(len(verts)))
    return int(sizes[covers].min())


@dataclass(frozen=True)
class ColorProfile:
    color: int
    best_size: int
    best_component: Component | None
    certificate: MatchingCertificate | None


@dataclass(frozen=True)
class ConnectedMatchingProfile:
    n: int
    colors: tuple[ColorProfile, ...]

    @property
    def best_sizes(self) -> tuple[int, ...]:
        return tuple(p.best_size for p in self.colors)

    def __getitem__(self, color: int) -> ColorProfile:
        return self.colors[color]


def _color_profile(m: ColorMatrix, color: int) -> ColorProfile:
    g = build_color_class(m, color)
    decomp = components(g)
    if not decomp.components:
        return ColorProfile(color, 0, None, None)
    n = m.n
    active = np.ones(n, dtype=np.bool_)
    match1, _, _ = kernels.hopcroft_karp(g.side1_adj, n, active)
    sizes = np.zeros(len(decomp), dtype=np.int64)
    for u in range(n):
        if match1[u] != -1:
            sizes[decomp.component_id[u]] += 1
    best = int(np.argmax(sizes))  # first maximum = smallest label
    comp = decomp.components[best]
    cert = max_matching(g, comp)
    return ColorProfile(color, int(sizes[best]), comp, cert)


def connected_matching_profile(m: ColorMatrix) -> ConnectedMatchingProfile:
    if not m.is_complete:
        raise ValueError("profile requires a complete coloring")
    return ConnectedMatchingProfile(m.n, tuple(_color_profile(m, c) for c in range(m.colors)))


def connected_matching_sizes(m: ColorMatrix) -> tuple[int, ...]:
    """Best connected-matching size per color, without certificates."""
    if not m.is_complete:
        raise ValueError("profile requires a complete coloring")
    return tuple(int(x) for x in kernels.best_sizes(m.cells, m.colors))


@dataclass(frozen=True)
class ColorReport:
    color: int
    best_size: int
    threshold: int
    met: bool
    component_vertices: tuple[int, ...]
    matching_edges: tuple[tuple[int, int], ...]
    cover_vertices: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "color": self.color,
            "best_size": self.best_size,
            "threshold": self.threshold,
            "met": self.met,
            "component_vertices": list(self.component_vertices),
            "matching_edges": [list(e) for e in self.matching_edges],
            "cover_vertices": list(self.cover_vertices),
        }


@dataclass(frozen=True)
class WitnessReport:
    """Per-color outcome of checking a coloring against a threshold vector.

    ``met`` is True when some color reaches its threshold, i.e. the coloring
    is *not* an avoiding witness.
    """

    n: int
    thresholds: tuple[int, ...]
    colors: tuple[ColorReport, ...]

    @property
    def met(self) -> bool:
        return any(c.met for c in self.colors)

    @property
    def best_sizes(self) -> tuple[int, ...]:
        return tuple(c.best_size for c in self.colors)

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "n": self.n,
            "thresholds": list(self.thresholds),
            "met": self.met,
            "colors": [c.to_dict() for c in self.colors],
        }

    def summary(self) -> str:
        lines = []
        for c in self.colors:
            flag = "MET" if c.met else "ok"
            lines.append(f"color {c.color}: best {c.best_size} / threshold {c.threshold}  {flag}")
        verdict = "threshold met" if self.met else "avoiding coloring (no threshold met)"
        lines.append(verdict)
        return "\n".join(lines)


def meets_threshold(m: ColorMatrix, t) -> WitnessReport:
    thresholds = tuple(int(x) for x in t)
    if len(thresholds) != m.colors:
        raise ValueError(f"expected {m.colors} thresholds, got {len(thresholds)}")
    if any(x < 2 for x in thresholds):
        raise ValueError("thresholds must be >= 2")
    profile = connected_matching_profile(m)
    n = m.n
    reports = []
    for p, k in zip(profile.colors, thresholds):
        if p.best_component is None:
            reports.append(ColorReport(p.color, 0, k, False, (), (), ()))
            continue
        reports.append(
            ColorReport(
                p.color,
                p.best_size,
                k,
                p.best_size >= k,
                p.best_component.vertices(n),
                p.certificate.matching,
                tuple(sorted(p.certificate.cover)),
            )
        )
    return WitnessReport(n, thresholds, tuple(reports))
