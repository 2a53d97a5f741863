"""Colored complete bipartite graphs and their monochromatic components."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import kernels
from .kernels import UNASSIGNED

__all__ = [
    "UNASSIGNED",
    "ISOLATED",
    "ColorMatrix",
    "ColorClassGraph",
    "Component",
    "ComponentDecomposition",
    "MatrixParseError",
    "build_color_class",
    "components",
]

ISOLATED = -1
SCHEMA_VERSION = 1


class MatrixParseError(ValueError):
    """Malformed ColorMatrix file; ``line``/``column`` are 1-based."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)


class ColorMatrix:
    """Edge coloring of K_{n,n}: ``cells[u, w]`` is the color of edge (u, w).

    Rows are V1 vertices, columns V2 vertices.  ``UNASSIGNED`` (-1) cells are
    only meaningful for partial states built by the search.
    """

    __slots__ = ("_cells", "colors")

    def __init__(self, cells, colors: int):
        arr = np.array(cells, dtype=np.int8, copy=True)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
            raise ValueError(f"color matrix must be square and non-empty, got shape {arr.shape}")
        if colors not in (2, 3):
            raise ValueError(f"colors must be 2 or 3, got {colors}")
        if arr.size and (arr.min() < UNASSIGNED or arr.max() >= colors):
            raise ValueError(f"cell values must lie in [0, {colors}) or be UNASSIGNED")
        arr.flags.writeable = False
        self._cells = arr
        self.colors = int(colors)

    @property
    def cells(self) -> np.ndarray:
        return self._cells

    @property
    def n(self) -> int:
        return self._cells.shape[0]

    def cell(self, u: int, w: int) -> int:
        return int(self._cells[u, w])

    @property
    def is_complete(self) -> bool:
        return bool((self._cells != UNASSIGNED).all())

    def recolor(self, u: int, w: int, color: int) -> ColorMatrix:
        cells = self._cells.copy()
        cells[u, w] = color
        return ColorMatrix(cells, self.colors)

    def permute_colors(self, mapping) -> ColorMatrix:
        """Relabel color ``j`` as ``mapping[j]``."""
        lut = np.asarray(mapping, dtype=np.int8)
        return ColorMatrix(lut[self._cells], self.colors)

    def __eq__(self, other):
        if not isinstance(other, ColorMatrix):
            return NotImplemented
        return self.colors == other.colors and np.array_equal(self._cells, other._cells)

    def __hash__(self):
        return hash((self.colors, self._cells.tobytes()))

    def __repr__(self):
        return f"ColorMatrix(n={self.n}, colors={self.colors})"

    # -- serialization ---------------------------------------------------

    def to_text(self) -> str:
        if not self.is_complete:
            raise ValueError("only complete colorings can be written")
        lines = [f"{self.n} {self.colors}"]
        lines += ["".join(str(int(x)) for x in row) for row in self._cells]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> ColorMatrix:
        lines = text.splitlines()
        while lines and not lines[-1].strip():
            lines.pop()
        if not lines:
            raise MatrixParseError("empty input", 1, 1)
        header = lines[0].split()
        if len(header) != 2 or not all(tok.isdigit() for tok in header):
            raise MatrixParseError("header must be 'n c'", 1, 1)
        n, colors = int(header[0]), int(header[1])
        if n < 1:
            raise MatrixParseError("n must be positive", 1, 1)
        if colors not in (2, 3):
            raise MatrixParseError("c must be 2 or 3", 1, len(header[0]) + 2)
        if len(lines) - 1 != n:
            raise MatrixParseError(f"expected {n} rows, found {len(lines) - 1}", len(lines) + 1, 1)
        cells = np.empty((n, n), dtype=np.int8)
        for u in range(n):
            row = lines[u + 1].rstrip("\r")
            lineno = u + 2
            if len(row) != n:
                col = min(len(row), n) + 1
                raise MatrixParseError(f"expected {n} digits, found {len(row)}", lineno, col)
            for w, ch in enumerate(row):
                if not ch.isdigit() or int(ch) >= colors:
                    raise MatrixParseError(f"invalid color {ch!r}", lineno, w + 1)
                cells[u, w] = int(ch)
        return cls(cells, colors)

    def to_json(self) -> str:
        if not self.is_complete:
            raise ValueError("only complete colorings can be written")
        doc = {
            "schema": SCHEMA_VERSION,
            "n": self.n,
            "colors": self.colors,
            "matrix": self._cells.tolist(),
        }
        return json.dumps(doc) + "\n"

    @classmethod
    def from_json(cls, text: str) -> ColorMatrix:
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MatrixParseError(exc.msg, exc.lineno, exc.colno) from None
        if not isinstance(doc, dict) or not {"n", "colors", "matrix"} <= doc.keys():
            raise MatrixParseError("JSON object needs keys n, colors, matrix", 1, 1)
        n, colors, matrix = doc["n"], doc["colors"], doc["matrix"]
        if not isinstance(matrix, list) or len(matrix) != n:
            raise MatrixParseError(f"matrix must have {n} rows", 1, 1)
        for u, row in enumerate(matrix):
            if not isinstance(row, list) or len(row) != n:
                raise MatrixParseError(f"row {u} must have {n} entries", 1, 1)
            for w, x in enumerate(row):
                if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < colors:
                    raise MatrixParseError(f"invalid color at row {u}, column {w}", 1, 1)
        try:
            return cls(matrix, colors)
        except ValueError as exc:
            raise MatrixParseError(str(exc), 1, 1) from None

    @classmethod
    def read(cls, path) -> ColorMatrix:
        text = Path(path).read_text()
        if text.lstrip().startswith("{"):
            return cls.from_json(text)
        return cls.from_text(text)

    def write(self, path, as_json: bool = False) -> None:
        Path(path).write_text(self.to_json() if as_json else self.to_text())


@dataclass(frozen=True, eq=False)
class ColorClassGraph:
    """Bipartite graph of the edges of one color.

    ``side1_adj[u]`` is the bit-packed set of V2 neighbours of V1 vertex u;
    ``side2_adj[w]`` the V1 neighbours of V2 vertex w.
    """

    n: int
    color: int
    side1_adj: np.ndarray
    side2_adj: np.ndarray

    def has_edge(self, u: int, w: int) -> bool:
        return bool(kernels.has_bit(self.side1_adj, u, w))

    def neighbors1(self, u: int) -> list[int]:
        return [w for w in range(self.n) if kernels.has_bit(self.side1_adj, u, w)]

    def neighbors2(self, w: int) -> list[int]:
        return [u for u in range(self.n) if kernels.has_bit(self.side2_adj, w, u)]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, w) for u in range(self.n) for w in self.neighbors1(u)]

    @property
    def num_edges(self) -> int:
        return sum(int(x).bit_count() for x in self.side1_adj.ravel())


@dataclass(frozen=True)
class Component:
    label: int
    side1: tuple[int, ...]
    side2: tuple[int, ...]

    def vertices(self, n: int) -> tuple[int, ...]:
        """Global indices, V2 vertex w as n + w."""
        return self.side1 + tuple(n + w for w in self.side2)


@dataclass(frozen=True, eq=False)
class ComponentDecomposition:
    n: int
    component_id: np.ndarray
    components: tuple[Component, ...]

    @property
    def isolated(self) -> list[int]:
        return [int(v) for v in np.flatnonzero(self.component_id == ISOLATED)]

    def __len__(self):
        return len(self.components)


def build_color_class(m: ColorMatrix, color: int) -> ColorClassGraph:
    if not 0 <= color < m.colors:
        raise ValueError(f"color {color} out of range for {m.colors} colors")
    if not m.is_complete:
        raise ValueError("color classes are defined for complete colorings only")
    adj1, adj2 = kernels.pack_rows(m.cells, color)
    for arr in (adj1, adj2):
        arr.flags.writeable = False
    return ColorClassGraph(m.n, color, adj1, adj2)


def components(g: ColorClassGraph) -> ComponentDecomposition:
    labels, count = kernels.component_labels(g.side1_adj, g.side2_adj)
    n = g.n
    comps = []
    for c in range(count):
        side1 = tuple(int(v) for v in np.flatnonzero(labels[:n] == c))
        side2 = tuple(int(v) for v in np.flatnonzero(labels[n:] == c))
        comps.append(Component(c, side1, side2))
    labels.flags.writeable = False
    return ComponentDecomposition(n, labels, tuple(comps))
