"""Hitomezashi designs as binary phase words on a square thread grid.

A design is fully determined by two phase words: one bit per horizontal
stitch line (``rows``, indexed by lattice y) and one per vertical stitch
line (``cols``, indexed by lattice x).  Running stitch leaves no further
choice: along a line, stitched and skipped unit edges strictly alternate,
so the bit only selects which end comes up first.

Conventions (fixed so that golden outputs stay stable):

* An edge at coordinate ``t`` on a line with phase bit ``b`` is stitched
  on the front iff ``(t + b)`` is even.  Bit 0 therefore starts a line on
  the front at coordinate 0; bit 1 starts it on the back.
* Coordinates are in thread units, origin bottom-left, y increasing
  upward.  A grid of W x H unit cells has ``W + 1`` vertical and
  ``H + 1`` horizontal stitch lines.
* The reverse side of a design is the bit-flipped spec, with no
  geometric mirroring; rendering offers a mirror flag for the physical
  flipped-over view.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

__all__ = [
    "Edge",
    "DesignSpec",
    "StitchSet",
    "Design",
    "SashikoError",
    "DimensionError",
    "PatternFormatError",
    "STAGES",
    "bitword",
    "build_design",
    "back_of",
    "design_count",
    "stitch_stage",
    "parse_bits",
    "format_bits",
    "parse_pattern",
    "format_pattern",
]


class SashikoError(Exception):
    """Base class for all domain errors raised by this package."""


class DimensionError(SashikoError):
    """Grid too small (or malformed) for the requested operation."""


class PatternFormatError(SashikoError):
    """Malformed pattern text."""


class Edge(NamedTuple):
    """A unit lattice edge.

    ``H`` spans (x, y)-(x+1, y); ``V`` spans (x, y)-(x, y+1).  Tuple
    ordering (orientation, then x, then y) is the package-wide
    deterministic edge order.
    """

    orientation: str  # "H" or "V"
    x: int
    y: int

    def endpoints(self) -> tuple[tuple[int, int], tuple[int, int]]:
        if self.orientation == "H":
            return (self.x, self.y), (self.x + 1, self.y)
        return (self.x, self.y), (self.x, self.y + 1)


def bitword(bits: Iterable[int]) -> tuple[int, ...]:
    """Validate and freeze a phase word; bits must be 0 or 1."""
    word = tuple(bits)
    if not word:
        raise ValueError("phase word must be non-empty")
    if any(b not in (0, 1) for b in word):
        raise ValueError(f"phase word may contain only 0 and 1, got {word!r}")
    return word


@dataclass(frozen=True)
class DesignSpec:
    """The complete genome of a hitomezashi design.

    ``rows`` has one bit per horizontal stitch line (length n = H + 1,
    index = lattice y); ``cols`` one per vertical line (length m = W + 1,
    index = lattice x).
    """

    rows: tuple[int, ...]
    cols: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", bitword(self.rows))
        object.__setattr__(self, "cols", bitword(self.cols))

    @property
    def width(self) -> int:
        return len(self.cols) - 1

    @property
    def height(self) -> int:
        return len(self.rows) - 1

    def flipped(self) -> "DesignSpec":
        """The spec with every phase bit inverted (the reverse side)."""
        return DesignSpec(
            tuple(1 - b for b in self.rows),
            tuple(1 - b for b in self.cols),
        )


@dataclass(frozen=True)
class StitchSet:
    """A set of front-stitched edges within a W x H cell grid."""

    edges: frozenset[Edge]
    width: int
    height: int

    def __post_init__(self) -> None:
        for e in self.edges:
            if e.orientation == "H":
                ok = 0 <= e.x <= self.width - 1 and 0 <= e.y <= self.height
            elif e.orientation == "V":
                ok = 0 <= e.x <= self.width and 0 <= e.y <= self.height - 1
            else:
                ok = False
            if not ok:
                raise ValueError(f"edge {e} out of bounds for {self.width}x{self.height} grid")

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.edges)

    def __contains__(self, edge: Edge) -> bool:
        return edge in self.edges


@dataclass(frozen=True)
class Design:
    """A spec together with its derived front stitch set."""

    spec: DesignSpec
    front: StitchSet

    @property
    def width(self) -> int:
        return self.spec.width

    @property
    def height(self) -> int:
        return self.spec.height


def _require_grid(spec: DesignSpec) -> None:
    if len(spec.rows) < 2 or len(spec.cols) < 2:
        raise DimensionError(
            "design needs at least a 1x1 cell grid: "
            f"got {len(spec.rows)} row line(s) and {len(spec.cols)} column line(s)"
        )


def front_edges(spec: DesignSpec) -> list[Edge]:
    """All front edges of ``spec``, in deterministic (H-then-V) order.

    H edge (x, y) is stitched iff (x + rows[y]) is even; V edge (x, y)
    iff (y + cols[x]) is even.  Along each line the stitched edges are
    therefore every second coordinate, starting at the phase bit.
    """
    w, h = spec.width, spec.height
    edges: list[Edge] = []
    for y, bit in enumerate(spec.rows):
        edges.extend(Edge("H", x, y) for x in range(bit, w, 2))
    for x, bit in enumerate(spec.cols):
        edges.extend(Edge("V", x, y) for y in range(bit, h, 2))
    return edges


def build_design(spec: DesignSpec) -> Design:
    """Derive the front stitch set from a spec.

    Raises DimensionError when either word is shorter than 2 (no cell
    to stitch).
    """
    _require_grid(spec)
    return Design(spec, StitchSet(frozenset(front_edges(spec)), spec.width, spec.height))


def back_of(design: Design) -> Design:
    """The design appearing on the reverse side of the fabric.

    Every phase bit flips, so each line's stitched and skipped edges
    swap; applying it twice returns the original design.  No mirroring
    is applied here (see render for the physically flipped view).
    """
    return build_design(design.spec.flipped())


def design_count(m: int, n: int) -> int:
    """Number of distinct designs on m vertical and n horizontal lines.

    Each line contributes an independent binary choice, so the count is
    2**(m + n).  Python integers are unbounded, so no overflow bound
    applies.
    """
    if m < 2 or n < 2:
        raise DimensionError(f"need at least two lines per direction, got m={m}, n={n}")
    return 2 ** (m + n)


STAGES = ("vertical-only", "horizontal-only", "combined")


def stitch_stage(design: Design, stage: str) -> StitchSet:
    """The subset of front stitches worked up to a given stage.

    Stitching proceeds one direction at a time: all vertical lines, then
    all horizontal.  ``vertical-only`` and ``horizontal-only`` partition
    ``combined``.
    """
    if stage not in STAGES:
        raise ValueError(f"stage must be one of {STAGES}, got {stage!r}")
    if stage == "combined":
        return design.front
    keep = "V" if stage == "vertical-only" else "H"
    edges = frozenset(e for e in design.front.edges if e.orientation == keep)
    return StitchSet(edges, design.width, design.height)


def parse_bits(text: str) -> tuple[int, ...]:
    """Parse a bitstring like ``0101``; leftmost character is line 0."""
    stripped = text.strip()
    if not stripped or any(c not in "01" for c in stripped):
        raise PatternFormatError(f"not a bitstring: {text!r}")
    return tuple(int(c) for c in stripped)


def format_bits(word: tuple[int, ...]) -> str:
    return "".join(str(b) for b in word)


def parse_pattern(text: str) -> DesignSpec:
    """Parse the line-oriented pattern format.

    ``rows=<bitstring>`` and ``cols=<bitstring>`` each exactly once, in
    either order; blank lines and ``#`` comments are ignored.
    """
    found: dict[str, tuple[int, ...]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or key not in ("rows", "cols"):
            raise PatternFormatError(f"line {lineno}: expected 'rows=<bits>' or 'cols=<bits>', got {raw!r}")
        if key in found:
            raise PatternFormatError(f"line {lineno}: duplicate key {key!r}")
        try:
            found[key] = parse_bits(value)
        except PatternFormatError as exc:
            raise PatternFormatError(f"line {lineno}: {exc}") from None
    for key in ("rows", "cols"):
        if key not in found:
            raise PatternFormatError(f"missing required key {key!r}")
    return DesignSpec(found["rows"], found["cols"])


def format_pattern(spec: DesignSpec) -> str:
    return f"rows={format_bits(spec.rows)}\ncols={format_bits(spec.cols)}\n"
