"""Structure of a design's stitch graph: loops, paths, shapes, symmetry.

Interior lattice vertices of any built design have exactly one stitched
horizontal and one stitched vertical neighbour, so the front edge set
splits into vertex-disjoint simple cycles ("loops") and simple paths
whose endpoints lie on the grid boundary ("stepped lines").  Loops
enclose polyominoes; nesting of loops forms a forest.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Mapping, Optional

from .core import Design, DimensionError, Edge, SashikoError

__all__ = [
    "Polyomino",
    "Loop",
    "Path",
    "Decomposition",
    "SymmetryReport",
    "CornerMap",
    "StatsRecord",
    "AnalysisInvariantError",
    "PLUS_PENTOMINO",
    "decompose",
    "polyomino_of",
    "detect_symmetry",
    "corner_map",
    "stats",
    "transform_edges",
    "word_period",
    "enclosed_cells",
]

Vertex = tuple[int, int]
Cell = tuple[int, int]


class AnalysisInvariantError(SashikoError):
    """The stitch graph violated a structural law (indicates a core bug)."""


# ---------------------------------------------------------------------------
# Polyominoes


@dataclass(frozen=True)
class Polyomino:
    """An edge-connected set of unit cells, translated so min x = min y = 0."""

    cells: frozenset[Cell]

    @classmethod
    def from_cells(cls, cells) -> "Polyomino":
        """Canonicalize an iterable of (cx, cy) cells by translation."""
        cellset = frozenset(cells)
        if not cellset:
            raise ValueError("a polyomino needs at least one cell")
        dx = min(c[0] for c in cellset)
        dy = min(c[1] for c in cellset)
        moved = frozenset((cx - dx, cy - dy) for cx, cy in cellset)
        if not _edge_connected(moved):
            raise ValueError("cells are not edge-connected")
        return cls(moved)

    @property
    def area(self) -> int:
        return len(self.cells)

    def row_profile(self) -> tuple[int, ...]:
        """Cell counts per row, bottom row first (e.g. the cross is (1, 3, 1))."""
        top = max(cy for _, cy in self.cells)
        counts = [0] * (top + 1)
        for _, cy in self.cells:
            counts[cy] += 1
        return tuple(counts)

    def symmetry_variants(self) -> list["Polyomino"]:
        """The up-to-8 distinct images under the square's symmetries."""
        seen = set()
        out = []
        cells = self.cells
        for _ in range(2):
            for _ in range(4):
                p = Polyomino.from_cells(cells)
                if p.cells not in seen:
                    seen.add(p.cells)
                    out.append(p)
                cells = frozenset((-cy, cx) for cx, cy in cells)  # rotate 90
            cells = frozenset((-cx, cy) for cx, cy in cells)  # mirror
        return out

    def canonical_under_symmetry(self) -> "Polyomino":
        """A representative invariant under the 8 square symmetries."""
        return min(self.symmetry_variants(), key=lambda p: sorted(p.cells))


def _edge_connected(cells: frozenset[Cell]) -> bool:
    start = next(iter(cells))
    seen = {start}
    stack = [start]
    while stack:
        cx, cy = stack.pop()
        for nb in ((cx + 1, cy), (cx - 1, cy), (cx, cy + 1), (cx, cy - 1)):
            if nb in cells and nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return len(seen) == len(cells)


PLUS_PENTOMINO = Polyomino.from_cells([(1, 0), (0, 1), (1, 1), (2, 1), (1, 2)])


# ---------------------------------------------------------------------------
# Loops and paths


@dataclass(frozen=True)
class Loop:
    """A simple closed cycle of stitches.

    ``edges`` are in cyclic traversal order starting from the loop's
    lexicographically smallest vertex.  ``area`` counts enclosed unit
    cells; ``polyomino`` is their translation-canonical shape, computed
    on first access.
    """

    edges: tuple[Edge, ...]
    vertices: tuple[Vertex, ...]
    area: int

    @cached_property
    def enclosed(self) -> frozenset[Cell]:
        """Enclosed cells in absolute grid coordinates (even-odd fill)."""
        return enclosed_cells(self.edges)

    @cached_property
    def polyomino(self) -> Polyomino:
        return Polyomino.from_cells(self.enclosed)

    @property
    def min_vertex(self) -> Vertex:
        return self.vertices[0]


@dataclass(frozen=True)
class Path:
    """A simple open chain of stitches ending on the grid boundary."""

    edges: tuple[Edge, ...]
    endpoints: tuple[Vertex, Vertex]

    @property
    def min_vertex(self) -> Vertex:
        return self.endpoints[0]


@dataclass(frozen=True)
class Decomposition:
    """Partition of a front stitch set into loops and boundary paths.

    ``nesting[i]`` is the index of the smallest loop strictly containing
    loop i, or None for top-level loops.
    """

    loops: tuple[Loop, ...]
    paths: tuple[Path, ...]
    nesting: tuple[Optional[int], ...]

    def depth_of(self, i: int) -> int:
        d = 1
        parent = self.nesting[i]
        while parent is not None:
            d += 1
            parent = self.nesting[parent]
        return d

    @property
    def max_depth(self) -> int:
        return max((self.depth_of(i) for i in range(len(self.loops))), default=0)


def enclosed_cells(edges) -> frozenset[Cell]:
    """Cells enclosed by a closed edge set, by even-odd row scanning.

    Within each cell row, the loop's vertical edges at that row are
    crossing points; cells between the (2i)-th and (2i+1)-th crossing
    are inside.
    """
    by_row: dict[int, list[int]] = {}
    for e in edges:
        if e.orientation == "V":
            by_row.setdefault(e.y, []).append(e.x)
    cells = set()
    for cy, xs in by_row.items():
        xs.sort()
        if len(xs) % 2:
            raise AnalysisInvariantError(f"odd crossing count in cell row {cy}: edge set is not closed")
        for left, right in zip(xs[0::2], xs[1::2]):
            for cx in range(left, right):
                cells.add((cx, cy))
    return frozenset(cells)


def _signed_area_twice(vertices: tuple[Vertex, ...]) -> int:
    total = 0
    n = len(vertices)
    for i in range(n):
        x0, y0 = vertices[i]
        x1, y1 = vertices[(i + 1) % n]
        total += x0 * y1 - x1 * y0
    return total


def decompose(design: Design) -> Decomposition:
    """Split the front stitch set into loops and boundary-ending paths.

    Deterministic: loops ordered by their smallest vertex, then paths
    likewise; each loop's edges start at its smallest vertex and run
    toward its smaller neighbour, each path runs from its smaller
    endpoint.
    """
    edges = design.front.edges
    adjacency: dict[Vertex, list[Edge]] = {}
    for e in edges:
        for v in e.endpoints():
            adjacency.setdefault(v, []).append(e)

    w, h = design.width, design.height
    for (x, y), incident in adjacency.items():
        if 1 <= x <= w - 1 and 1 <= y <= h - 1:
            if len(incident) != 2:
                raise AnalysisInvariantError(f"interior vertex ({x}, {y}) has degree {len(incident)}")
        elif len(incident) > 2:
            raise AnalysisInvariantError(f"boundary vertex ({x}, {y}) has degree {len(incident)}")

    visited: set[Edge] = set()

    def other_end(e: Edge, v: Vertex) -> Vertex:
        a, b = e.endpoints()
        return b if v == a else a

    def walk(start: Vertex, first: Edge):
        chain = [first]
        verts = [start]
        visited.add(first)
        v = other_end(first, start)
        while v != start:
            verts.append(v)
            nxt = None
            for e in adjacency[v]:
                if e not in visited:
                    nxt = e
                    break
            if nxt is None:
                break
            chain.append(nxt)
            visited.add(nxt)
            v = other_end(nxt, v)
        return chain, verts, v

    # paths: seeded at degree-1 vertices, in vertex order, so each path is
    # discovered from its lexicographically smaller endpoint first
    keyed_paths = []
    for v in sorted(av for av, inc in adjacency.items() if len(inc) == 1):
        e = adjacency[v][0]
        if e in visited:
            continue
        chain, verts, end = walk(v, e)
        if not _on_boundary(end, w, h) or not _on_boundary(v, w, h):
            raise AnalysisInvariantError(f"path endpoint off the boundary: {v} .. {end}")
        keyed_paths.append((min(verts), Path(tuple(chain), (v, end))))

    # remaining edges all lie on cycles
    loops = []
    for start_edge in sorted(edges):
        if start_edge in visited:
            continue
        start = min(start_edge.endpoints())
        chain, verts, end = walk(start, start_edge)
        if end != start:
            raise AnalysisInvariantError(f"open chain found while tracing a cycle at {start}")
        loops.append(_canonical_loop(verts))

    loops.sort(key=lambda lp: lp.min_vertex)
    keyed_paths.sort()
    return Decomposition(tuple(loops), tuple(p for _, p in keyed_paths), _nesting(loops))


def _on_boundary(v: Vertex, w: int, h: int) -> bool:
    x, y = v
    return x == 0 or y == 0 or x == w or y == h


def _canonical_loop(verts: list[Vertex]) -> Loop:
    n = len(verts)
    i = verts.index(min(verts))
    forward = verts[i:] + verts[:i]
    if forward[-1] < forward[1]:  # run toward the smaller neighbour
        forward = [forward[0]] + forward[:0:-1]
    ordered = tuple(_edge_between(forward[j], forward[(j + 1) % n]) for j in range(n))
    area2 = _signed_area_twice(tuple(forward))
    if area2 % 2:
        raise AnalysisInvariantError("cycle with non-integral area")
    return Loop(ordered, tuple(forward), abs(area2) // 2)


def _edge_between(a: Vertex, b: Vertex) -> Edge:
    (x0, y0), (x1, y1) = sorted((a, b))
    if y0 == y1:
        return Edge("H", x0, y0)
    return Edge("V", x0, y0)


def _interior_cell_at_min_vertex(loop: Loop) -> Cell:
    # At the (y, x)-minimal vertex the cycle turns a convex corner whose
    # inside is the cell diagonally up-right of the vertex.
    x, y = min(loop.vertices, key=lambda v: (v[1], v[0]))
    return (x, y)


def _contains_cell(loop: Loop, cell: Cell) -> bool:
    # cast a ray from the cell centre toward x = -inf, counting the
    # loop's vertical edges it crosses
    cx, cy = cell
    crossings = sum(1 for e in loop.edges if e.orientation == "V" and e.y == cy and e.x <= cx)
    return crossings % 2 == 1


def _nesting(loops: list[Loop]) -> tuple[Optional[int], ...]:
    parents: list[Optional[int]] = []
    for i, inner in enumerate(loops):
        probe = _interior_cell_at_min_vertex(inner)
        best: Optional[int] = None
        for j, outer in enumerate(loops):
            if j == i or outer.area <= inner.area:
                continue
            if _contains_cell(outer, probe):
                if best is None or outer.area < loops[best].area:
                    best = j
        parents.append(best)
    return tuple(parents)


def polyomino_of(loop: Loop) -> Polyomino:
    """The translation-canonical shape enclosed by a loop."""
    return loop.polyomino


# ---------------------------------------------------------------------------
# Symmetry


SYMMETRY_OPS = (
    "identity",
    "mirrorX",
    "mirrorY",
    "rot180",
    "rot90",
    "rot270",
    "mirrorDiag",
    "mirrorAnti",
)

_SQUARE_ONLY = frozenset({"rot90", "rot270", "mirrorDiag", "mirrorAnti"})


def _vertex_map(op: str, w: int, h: int) -> Callable[[int, int], Vertex]:
    if op in _SQUARE_ONLY and w != h:
        raise ValueError(f"{op} requires a square grid (got {w}x{h})")
    maps: dict[str, Callable[[int, int], Vertex]] = {
        "identity": lambda x, y: (x, y),
        "mirrorX": lambda x, y: (w - x, y),
        "mirrorY": lambda x, y: (x, h - y),
        "rot180": lambda x, y: (w - x, h - y),
        "rot90": lambda x, y: (w - y, x),
        "rot270": lambda x, y: (y, w - x),
        "mirrorDiag": lambda x, y: (y, x),
        "mirrorAnti": lambda x, y: (w - y, w - x),
    }
    return maps[op]


def transform_edges(edges, op: str, w: int, h: int) -> frozenset[Edge]:
    """Image of an edge set under one of the square-grid symmetries.

    ``mirrorX`` reflects across the vertical centreline (x -> W - x),
    ``mirrorY`` across the horizontal one; rotations act about the grid
    centre.  Quarter turns and diagonal mirrors require W == H.
    """
    f = _vertex_map(op, w, h)
    out = set()
    for e in edges:
        a, b = e.endpoints()
        out.add(_edge_between(f(*a), f(*b)))
    return frozenset(out)


@dataclass(frozen=True)
class SymmetryReport:
    """Exactly the square symmetries fixing the front stitch set.

    ``ops`` is always a subgroup of the square's symmetry group;
    quarter-turn and diagonal candidates are only examined on square
    grids.  Word periods use prefix-repetition semantics (smallest p
    with word[i] == word[i+p] for all valid i).
    """

    ops: frozenset[str]
    point_group_name: str
    row_period: int
    col_period: int


def _point_group_name(ops: frozenset[str]) -> str:
    mirrors = ops & {"mirrorX", "mirrorY", "mirrorDiag", "mirrorAnti"}
    if len(ops) == 8:
        return "d4"
    if len(ops) == 4:
        return "d2" if mirrors else "c4"
    if len(ops) == 2:
        return "d1" if mirrors else "c2"
    return "c1"


def word_period(word: tuple[int, ...]) -> int:
    """Smallest p >= 1 such that word[i] == word[i + p] wherever defined."""
    n = len(word)
    for p in range(1, n + 1):
        if all(word[i] == word[i + p] for i in range(n - p)):
            return p
    return n


def detect_symmetry(design: Design) -> SymmetryReport:
    """Report which of the 8 square-grid symmetries fix the design."""
    w, h = design.width, design.height
    front = design.front.edges
    ops = set()
    for op in SYMMETRY_OPS:
        if op in _SQUARE_ONLY and w != h:
            continue
        if transform_edges(front, op, w, h) == front:
            ops.add(op)
    return SymmetryReport(
        ops=frozenset(ops),
        point_group_name=_point_group_name(frozenset(ops)),
        row_period=word_period(design.spec.rows),
        col_period=word_period(design.spec.cols),
    )


# ---------------------------------------------------------------------------
# Corner map (Truchet-style view)


@dataclass(frozen=True)
class CornerMap:
    """Corner type at each interior vertex.

    The first letter says which horizontal neighbour edge is stitched
    (L/R), the second which vertical one (U/D); the degree law
    guarantees exactly one of each.
    """

    corners: Mapping[Vertex, str] = field(hash=False)

    def __getitem__(self, v: Vertex) -> str:
        return self.corners[v]

    def __len__(self) -> int:
        return len(self.corners)


def corner_map(design: Design) -> CornerMap:
    """Classify every interior vertex by its stitched edge pair."""
    w, h = design.width, design.height
    if w < 2 or h < 2:
        raise DimensionError(f"corner map needs an interior vertex; grid is {w}x{h}")
    front = design.front.edges
    corners: dict[Vertex, str] = {}
    for x in range(1, w):
        for y in range(1, h):
            left = Edge("H", x - 1, y) in front
            right = Edge("H", x, y) in front
            up = Edge("V", x, y) in front
            down = Edge("V", x, y - 1) in front
            if left == right or up == down:
                raise AnalysisInvariantError(f"degree law broken at interior vertex ({x}, {y})")
            corners[(x, y)] = ("L" if left else "R") + ("U" if up else "D")
    return CornerMap(corners)


# ---------------------------------------------------------------------------
# Stats


@dataclass(frozen=True)
class StatsRecord:
    """Census row for one design; see enumeration.CSV_COLUMNS for the order."""

    loops: int
    paths: int
    max_depth: int
    h_edges: int
    v_edges: int
    area_histogram: tuple[tuple[int, int], ...]  # (area, count), area ascending

    def areas_field(self) -> str:
        return ";".join(f"{a}:{c}" for a, c in self.area_histogram)

    def csv_fields(self) -> tuple[str, ...]:
        return (
            str(self.loops),
            str(self.paths),
            str(self.max_depth),
            str(self.h_edges),
            str(self.v_edges),
            self.areas_field(),
        )


def stats(design: Design, decomposition: Optional[Decomposition] = None) -> StatsRecord:
    """Loop/path census of one design."""
    if decomposition is None:
        decomposition = decompose(design)
    hist: dict[int, int] = {}
    for lp in decomposition.loops:
        hist[lp.area] = hist.get(lp.area, 0) + 1
    h_edges = sum(1 for e in design.front.edges if e.orientation == "H")
    return StatsRecord(
        loops=len(decomposition.loops),
        paths=len(decomposition.paths),
        max_depth=decomposition.max_depth,
        h_edges=h_edges,
        v_edges=len(design.front.edges) - h_edges,
        area_histogram=tuple(sorted(hist.items())),
    )
