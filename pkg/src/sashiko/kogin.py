"""Counted-thread kogin/hishi charts: rows of horizontal runs.

A chart is read like a thread-count graph: each row lists runs of
stitched threads, and the craft's parity rule applies to run lengths -
kogin uses odd counts, hishi even counts.  Strict kogin additionally
limits lengths to 1, 3 and 5.  Only horizontal stitches are modelled.

Chart text format: a header line ``width=<int> mode=<kogin|hishi>
name=<label>``, then one row per line, top row first, with ``-`` for a
stitched thread and ``.`` for a skipped one.  ``#`` lines are comments.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from typing import NamedTuple

from .core import SashikoError

__all__ = [
    "Run",
    "ChartRow",
    "KoginChart",
    "Violation",
    "ValidationReport",
    "ChartParseError",
    "UnknownMotifError",
    "MODES",
    "MOTIF_NAMES",
    "STRICT_KOGIN_LENGTHS",
    "validate",
    "check_chart",
    "parse_chart",
    "emit_chart",
    "motif",
    "has_vertical_mirror",
]

MODES = ("kogin", "hishi")
STRICT_KOGIN_LENGTHS = frozenset({1, 3, 5})
MOTIF_NAMES = ("butterfly", "dragonfly", "gourd", "kikurako")


class ChartParseError(SashikoError):
    """Malformed chart text."""


class UnknownMotifError(SashikoError):
    """Requested motif is not in the bundled library."""


class Run(NamedTuple):
    """A horizontal run of stitched threads."""

    start: int
    length: int


@dataclass(frozen=True)
class ChartRow:
    runs: tuple[Run, ...]


@dataclass(frozen=True)
class KoginChart:
    width: int
    rows: tuple[ChartRow, ...]  # top row first
    mode: str
    name: str


@dataclass(frozen=True)
class Violation:
    row: int  # 0-based, top row first
    run: Run
    reason: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def validate(chart: KoginChart, strict: bool = False) -> ValidationReport:
    """Check every run length against the chart's parity mode.

    Kogin requires odd lengths, hishi even; with ``strict`` (kogin
    only), lengths must come from {1, 3, 5}.  Violations are reported,
    never raised.
    """
    if chart.mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {chart.mode!r}")
    want_odd = chart.mode == "kogin"
    violations = []
    for r, row in enumerate(chart.rows):
        for run in row.runs:
            if run.length % 2 != (1 if want_odd else 0):
                parity = "odd" if want_odd else "even"
                violations.append(Violation(r, run, f"length {run.length} is not {parity} ({chart.mode})"))
            elif strict and want_odd and run.length not in STRICT_KOGIN_LENGTHS:
                violations.append(Violation(r, run, f"length {run.length} not in strict set {{1, 3, 5}}"))
    return ValidationReport(tuple(violations))


def check_chart(chart: KoginChart) -> None:
    """Raise ValueError on structural problems (overlap, bounds, mode).

    Kept separate from validate() so parity checking stays usable on
    deliberately broken in-memory charts (e.g. mutation tests).
    """
    if chart.mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {chart.mode!r}")
    if chart.width < 1 or not chart.rows:
        raise ValueError("chart needs a positive width and at least one row")
    for r, row in enumerate(chart.rows):
        prev_end = None
        for run in row.runs:
            if run.length < 1:
                raise ValueError(f"row {r}: run {run} has non-positive length")
            if run.start < 0 or run.start + run.length > chart.width:
                raise ValueError(f"row {r}: run {run} outside width {chart.width}")
            if prev_end is not None and run.start <= prev_end:
                raise ValueError(f"row {r}: run {run} touches or overlaps the previous run")
            prev_end = run.start + run.length - 1


def _parse_header(line: str, lineno: int) -> tuple[int, str, str]:
    fields = dict(
        part.partition("=")[::2]
        for part in line.split()
        if "=" in part
    )
    missing = {"width", "mode", "name"} - fields.keys()
    if missing or len(fields) != len(line.split()):
        raise ChartParseError(f"line {lineno}: header must be 'width=<int> mode=<kogin|hishi> name=<label>'")
    try:
        width = int(fields["width"])
    except ValueError:
        raise ChartParseError(f"line {lineno}: width is not an integer: {fields['width']!r}") from None
    if fields["mode"] not in MODES:
        raise ChartParseError(f"line {lineno}: mode must be one of {MODES}, got {fields['mode']!r}")
    return width, fields["mode"], fields["name"]


def parse_chart(text: str) -> KoginChart:
    """Parse chart text; raises ChartParseError with line/column info."""
    header = None
    rows: list[ChartRow] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip()
        if not line or line.lstrip().startswith("#"):
            continue
        if header is None:
            header = _parse_header(line, lineno)
            continue
        width = header[0]
        if len(line) != width:
            raise ChartParseError(f"line {lineno}: row has {len(line)} threads, chart width is {width}")
        runs = []
        start = None
        for col, ch in enumerate(line):
            if ch == "-":
                if start is None:
                    start = col
            elif ch == ".":
                if start is not None:
                    runs.append(Run(start, col - start))
                    start = None
            else:
                raise ChartParseError(f"line {lineno}, column {col + 1}: expected '-' or '.', got {ch!r}")
        if start is not None:
            runs.append(Run(start, width - start))
        rows.append(ChartRow(tuple(runs)))
    if header is None:
        raise ChartParseError("missing header line")
    if not rows:
        raise ChartParseError("chart has no rows")
    chart = KoginChart(header[0], tuple(rows), header[1], header[2])
    check_chart(chart)
    return chart


def emit_chart(chart: KoginChart) -> str:
    """Normalized chart text; parse(emit(chart)) == chart."""
    lines = [f"width={chart.width} mode={chart.mode} name={chart.name}"]
    for row in chart.rows:
        cells = ["."] * chart.width
        for run in row.runs:
            for i in range(run.start, run.start + run.length):
                cells[i] = "-"
        lines.append("".join(cells))
    return "\n".join(lines) + "\n"


def motif(name: str) -> KoginChart:
    """Load one of the bundled motif charts by name."""
    if name not in MOTIF_NAMES:
        raise UnknownMotifError(f"unknown motif {name!r}; valid names: {', '.join(MOTIF_NAMES)}")
    data = resources.files("sashiko").joinpath(f"data/motifs/{name}.chart").read_text(encoding="utf-8")
    return parse_chart(data)


def has_vertical_mirror(chart: KoginChart) -> bool:
    """True when every row is symmetric about the chart's centre thread."""
    for row in chart.rows:
        mirrored = sorted(Run(chart.width - run.start - run.length, run.length) for run in row.runs)
        if mirrored != sorted(row.runs):
            return False
    return True
