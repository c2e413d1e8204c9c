"""Deterministic SVG and ASCII renderings of designs and charts.

SVG documents are emitted as plain text from an internal element list:
one ``<line>`` per stitch (or per chart run), in the package-wide edge
order, so output bytes are reproducible and tests can count and parse
elements back out.  Stitches are drawn with a small end gap so adjacent
stitches on the same line read as separate stabs.  Default colours are
white thread on indigo cloth.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Design, Edge, StitchSet, back_of, stitch_stage
from .kogin import KoginChart
from .snowflake import Snowflake

__all__ = [
    "RenderOptions",
    "render_design_svg",
    "render_design_ascii",
    "render_chart_svg",
    "render_snowflake_svg",
]


@dataclass(frozen=True)
class RenderOptions:
    """Rendering knobs shared by the SVG and ASCII backends.

    ``gap_fraction`` is the fraction of a cell length left unstitched,
    split between the two ends of each stitch.  ``mirror_back`` flips
    x across the grid's vertical centreline and only applies when
    ``side == "back"`` (the physically accurate flipped-over view).
    ``ascii_safe`` swaps box-drawing glyphs for plain ASCII.
    """

    cell_size: float = 20.0
    side: str = "front"  # front | back
    mirror_back: bool = False
    stage: str = "combined"
    show_grid: bool = False
    stroke: str = "white"
    background: str = "indigo"
    gap_fraction: float = 0.15
    ascii_safe: bool = False

    def __post_init__(self) -> None:
        if self.cell_size <= 0:
            raise ValueError(f"cell_size must be positive, got {self.cell_size}")
        if self.side not in ("front", "back"):
            raise ValueError(f"side must be 'front' or 'back', got {self.side!r}")
        if not 0 <= self.gap_fraction < 1:
            raise ValueError(f"gap_fraction must be in [0, 1), got {self.gap_fraction}")


def _fmt(v: float) -> str:
    return f"{v:g}"


def _staged_edges(design: Design, opts: RenderOptions) -> tuple[StitchSet, int, int]:
    shown = design if opts.side == "front" else back_of(design)
    staged = stitch_stage(shown, opts.stage)
    if opts.side == "back" and opts.mirror_back:
        w = staged.width
        mirrored = frozenset(
            Edge("H", w - e.x - 1, e.y) if e.orientation == "H" else Edge("V", w - e.x, e.y)
            for e in staged.edges
        )
        staged = StitchSet(mirrored, staged.width, staged.height)
    return staged, design.width, design.height


def _svg_document(body: list[str], width: float, height: float, opts: RenderOptions) -> str:
    head = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" height="{_fmt(height)}" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
        f'<rect x="0" y="0" width="{_fmt(width)}" height="{_fmt(height)}" fill="{opts.background}"/>',
    ]
    return "\n".join(head + body + ["</svg>"]) + "\n"


def _grid_dots(w: int, h: int, opts: RenderOptions, margin: float) -> list[str]:
    s = opts.cell_size
    r = s * 0.06
    dots = [
        f'<circle cx="{_fmt(margin + x * s)}" cy="{_fmt(margin + (h - y) * s)}" r="{_fmt(r)}"/>'
        for y in range(h + 1)
        for x in range(w + 1)
    ]
    return [f'<g fill="{opts.stroke}" fill-opacity="0.35">'] + dots + ["</g>"]


def _stitch_lines(edges: list[Edge], h: int, opts: RenderOptions, margin: float) -> list[str]:
    s = opts.cell_size
    gap = opts.gap_fraction * s / 2
    lines = []
    for e in edges:
        if e.orientation == "H":
            x1, x2 = e.x * s + gap, (e.x + 1) * s - gap
            y1 = y2 = (h - e.y) * s
        else:
            x1 = x2 = e.x * s
            y1, y2 = (h - e.y) * s - gap, (h - e.y - 1) * s + gap
        lines.append(
            f'<line x1="{_fmt(margin + x1)}" y1="{_fmt(margin + y1)}" '
            f'x2="{_fmt(margin + x2)}" y2="{_fmt(margin + y2)}"/>'
        )
    return lines


def render_design_svg(design: Design, opts: RenderOptions = RenderOptions()) -> str:
    """Render the chosen side/stage of a design; one <line> per stitch."""
    staged, w, h = _staged_edges(design, opts)
    s = opts.cell_size
    margin = s / 2
    body = []
    if opts.show_grid:
        body.extend(_grid_dots(w, h, opts, margin))
    body.append(
        f'<g stroke="{opts.stroke}" stroke-width="{_fmt(s * 0.14)}" stroke-linecap="round">'
    )
    body.extend(_stitch_lines(sorted(staged.edges), h, opts, margin))
    body.append("</g>")
    return _svg_document(body, w * s + 2 * margin, h * s + 2 * margin, opts)


def render_design_ascii(design: Design, opts: RenderOptions = RenderOptions()) -> str:
    """Character-grid view; '─'/'│' mark stitched edges, top row is y = H."""
    staged, w, h = _staged_edges(design, opts)
    hbar, vbar = ("-", "|") if opts.ascii_safe else ("─", "│")
    dot = ("." if opts.ascii_safe else "·") if opts.show_grid else " "
    edges = staged.edges

    def hline(y: int) -> str:
        out = []
        for x in range(w + 1):
            out.append(dot)
            if x < w:
                out.append(hbar if Edge("H", x, y) in edges else " ")
        return "".join(out).rstrip()

    def vline(y: int) -> str:
        out = []
        for x in range(w + 1):
            out.append(vbar if Edge("V", x, y) in edges else " ")
            if x < w:
                out.append(" ")
        return "".join(out).rstrip()

    lines = []
    for y in range(h, 0, -1):
        lines.append(hline(y))
        lines.append(vline(y - 1))
    lines.append(hline(0))
    return "\n".join(lines) + "\n"


def render_chart_svg(chart: KoginChart, opts: RenderOptions = RenderOptions()) -> str:
    """Render a thread chart; one <line> per run, rows top-first."""
    s = opts.cell_size
    margin = s / 2
    inset = opts.gap_fraction * s / 2
    height = len(chart.rows)
    body = []
    if opts.show_grid:
        dots = [
            f'<circle cx="{_fmt(margin + (x + 0.5) * s)}" cy="{_fmt(margin + (y + 0.5) * s)}" r="{_fmt(s * 0.06)}"/>'
            for y in range(height)
            for x in range(chart.width)
        ]
        body.extend([f'<g fill="{opts.stroke}" fill-opacity="0.35">'] + dots + ["</g>"])
    body.append(
        f'<g stroke="{opts.stroke}" stroke-width="{_fmt(s * 0.55)}" stroke-linecap="round">'
    )
    for r, row in enumerate(chart.rows):
        y = margin + (r + 0.5) * s
        for run in row.runs:
            x1 = margin + run.start * s + inset
            x2 = margin + (run.start + run.length) * s - inset
            body.append(f'<line x1="{_fmt(x1)}" y1="{_fmt(y)}" x2="{_fmt(x2)}" y2="{_fmt(y)}"/>')
    body.append("</g>")
    return _svg_document(body, chart.width * s + 2 * margin, height * s + 2 * margin, opts)


def render_snowflake_svg(flake: Snowflake, opts: RenderOptions = RenderOptions()) -> str:
    """Render a snowflake boundary in the stitch style; one <line> per step."""
    xs = [x for x, _ in flake.boundary]
    ys = [y for _, y in flake.boundary]
    dx, dy = -min(xs), -min(ys)
    w, h = max(xs) + dx, max(ys) + dy
    edges = []
    for a, b in zip(flake.boundary, flake.boundary[1:]):
        (x0, y0), (x1, y1) = sorted(((a[0] + dx, a[1] + dy), (b[0] + dx, b[1] + dy)))
        edges.append(Edge("H" if y0 == y1 else "V", x0, y0))
    s = opts.cell_size
    margin = s / 2
    body = [f'<g stroke="{opts.stroke}" stroke-width="{_fmt(s * 0.14)}" stroke-linecap="round">']
    body.extend(_stitch_lines(sorted(edges), h, opts, margin))
    body.append("</g>")
    return _svg_document(body, w * s + 2 * margin, h * s + 2 * margin, opts)
