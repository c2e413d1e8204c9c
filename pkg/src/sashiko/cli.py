"""Command-line surface for the sashiko toolkit.

Exit codes: 0 success, 1 domain error, 2 usage error, 3 I/O error.
Bitstring flags read left to right as line 0 upward (bottom row first,
leftmost column first).  Besides literal bitstrings, the word flags
accept generator shorthands:

* ``ones:<n>`` / ``alternating:<n>`` - constant or 0101... words
* ``random:p=<float>,seed=<int>,n=<int>`` - seeded Bernoulli word
* ``fibword:<n>`` - binary Fibonacci word 1, 10, 101, 10110, ...
  truncated to n letters

All randomness requires an explicit seed; outputs are reproducible.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path
from typing import Optional

from . import analysis, enumeration, kogin, render, snowflake
from .core import (
    STAGES,
    DesignSpec,
    SashikoError,
    build_design,
    format_bits,
    format_pattern,
    parse_bits,
    parse_pattern,
)

__all__ = ["main", "entry"]


def _word_type(text: str) -> tuple[int, ...]:
    try:
        return _expand_word(text)
    except (SashikoError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _expand_word(text: str) -> tuple[int, ...]:
    name, sep, rest = text.partition(":")
    if not sep:
        return parse_bits(text)
    if name == "ones":
        return tuple([1] * _positive_int(rest))
    if name == "alternating":
        n = _positive_int(rest)
        return tuple(i % 2 for i in range(n))
    if name == "fibword":
        return tuple(int(c) for c in _fibword(_positive_int(rest)))
    if name == "random":
        params = dict(part.partition("=")[::2] for part in rest.split(","))
        if set(params) != {"p", "seed", "n"}:
            raise ValueError("random shorthand needs p=<float>,seed=<int>,n=<int>")
        p = float(params["p"])
        rng = random.Random(int(params["seed"]))
        return tuple(1 if rng.random() < p else 0 for _ in range(_positive_int(params["n"])))
    return parse_bits(text)


def _positive_int(text: str) -> int:
    n = int(text)
    if n < 1:
        raise ValueError(f"length must be >= 1, got {n}")
    return n


def _fibword(length: int) -> str:
    prev, word = "1", "10"
    while len(word) < length:
        prev, word = word, word + prev
    return word[:length] if length > 1 else "1"


def _design_spec(args: argparse.Namespace, parser: argparse.ArgumentParser) -> DesignSpec:
    if args.pattern is not None:
        if args.rows is not None or args.cols is not None:
            parser.error("--pattern cannot be combined with --rows/--cols")
        return parse_pattern(Path(args.pattern).read_text(encoding="utf-8"))
    if args.rows is None or args.cols is None:
        missing = "--rows" if args.rows is None else "--cols"
        parser.error(f"{missing} is required (or use --pattern FILE)")
    return DesignSpec(args.rows, args.cols)


def _render_options(args: argparse.Namespace) -> render.RenderOptions:
    return render.RenderOptions(
        cell_size=args.cell_size,
        side=getattr(args, "side", "front"),
        mirror_back=getattr(args, "mirror_back", False),
        stage=getattr(args, "stage", "combined"),
        show_grid=args.show_grid,
        stroke=args.stroke,
        background=args.background,
        gap_fraction=args.gap_fraction,
        ascii_safe=getattr(args, "ascii_safe", False),
    )


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommand handlers


def _cmd_generate(args, parser) -> int:
    design = build_design(_design_spec(args, parser))
    opts = _render_options(args)
    if args.format == "svg":
        _emit(render.render_design_svg(design, opts), args.out)
    else:
        _emit(render.render_design_ascii(design, opts), args.out)
    return 0


def _cmd_dual(args, parser) -> int:
    spec = _design_spec(args, parser)
    _emit(format_pattern(spec.flipped()), args.out)
    return 0


def _cmd_decompose(args, parser) -> int:
    design = build_design(_design_spec(args, parser))
    decomposition = analysis.decompose(design)
    lines = []
    for i, lp in enumerate(decomposition.loops):
        parent = decomposition.nesting[i]
        lines.append(
            f"loop i={i} parent={'-' if parent is None else parent} "
            f"area={lp.area} edges={len(lp.edges)} start={lp.min_vertex}"
        )
    for i, p in enumerate(decomposition.paths):
        lines.append(f"path i={i} edges={len(p.edges)} from={p.endpoints[0]} to={p.endpoints[1]}")
    _emit("\n".join(lines) + "\n" if lines else "", args.out)
    return 0


def _cmd_stats(args, parser) -> int:
    spec = _design_spec(args, parser)
    record = analysis.stats(build_design(spec))
    header = ",".join(enumeration.CSV_COLUMNS)
    fields = (
        str(len(spec.cols)),
        str(len(spec.rows)),
        format_bits(spec.rows),
        format_bits(spec.cols),
        *record.csv_fields(),
    )
    _emit(header + "\n" + ",".join(fields) + "\n", args.out)
    return 0


def _cmd_symmetry(args, parser) -> int:
    design = build_design(_design_spec(args, parser))
    report = analysis.detect_symmetry(design)
    ordered = [op for op in analysis.SYMMETRY_OPS if op in report.ops]
    text = (
        f"ops={','.join(ordered)}\n"
        f"point_group={report.point_group_name}\n"
        f"row_period={report.row_period}\n"
        f"col_period={report.col_period}\n"
    )
    _emit(text, args.out)
    return 0


def _cmd_enumerate(args, parser) -> int:
    lines = ["rows_bits,cols_bits"]
    for spec in enumeration.enumerate_designs(args.m, args.n, cap=args.cap):
        lines.append(f"{format_bits(spec.rows)},{format_bits(spec.cols)}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_census(args, parser) -> int:
    table = enumeration.census(
        args.m,
        args.n,
        mode=args.mode,
        count=args.count,
        seed=args.seed,
        cap=args.cap,
        jobs=args.jobs,
    )
    _emit(table.to_csv(), args.out)
    return 0


def _parse_cells(text: str) -> analysis.Polyomino:
    cells = []
    for part in text.split(";"):
        x, _, y = part.strip().partition(",")
        cells.append((int(x), int(y)))
    return analysis.Polyomino.from_cells(cells)


def _cmd_find(args, parser) -> int:
    if (args.cells is None) == (args.snowflake_order is None):
        parser.error("exactly one of --cells or --snowflake-order is required")
    if args.cells is not None:
        try:
            target = _parse_cells(args.cells)
        except ValueError as exc:
            parser.error(f"--cells: {exc}")
    else:
        target = snowflake.build_snowflake(args.snowflake_order).polyomino
    matches = enumeration.find_designs_containing(
        target, args.m, args.n, up_to_symmetry=args.up_to_symmetry, cap=args.cap, jobs=args.jobs
    )
    lines = ["rows_bits,cols_bits"]
    lines.extend(f"{format_bits(s.rows)},{format_bits(s.cols)}" for s in matches)
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_snowflake(args, parser) -> int:
    flake = snowflake.build_snowflake(args.order)
    if args.format == "steps":
        _emit(flake.steps + "\n", args.out)
    else:
        _emit(render.render_snowflake_svg(flake, _render_options(args)), args.out)
    return 0


def _load_chart(args, parser) -> kogin.KoginChart:
    if (args.motif is None) == (args.chart is None):
        parser.error("exactly one of --motif or --chart is required")
    if args.motif is not None:
        return kogin.motif(args.motif)
    return kogin.parse_chart(Path(args.chart).read_text(encoding="utf-8"))


def _cmd_kogin_validate(args, parser) -> int:
    chart = _load_chart(args, parser)
    report = kogin.validate(chart, strict=args.strict)
    if report.ok:
        _emit(f"OK name={chart.name} mode={chart.mode} rows={len(chart.rows)}\n", args.out)
        return 0
    lines = [f"row={v.row} run=({v.run.start},{v.run.length}) reason={v.reason}" for v in report.violations]
    _emit("\n".join(lines) + "\n", args.out)
    return 1


def _cmd_kogin_render(args, parser) -> int:
    chart = _load_chart(args, parser)
    _emit(render.render_chart_svg(chart, _render_options(args)), args.out)
    return 0


def _cmd_motif_list(args, parser) -> int:
    _emit("\n".join(kogin.MOTIF_NAMES) + "\n", args.out)
    return 0


# ---------------------------------------------------------------------------
# parser assembly


def _add_render_flags(p: argparse.ArgumentParser, ascii_flags: bool = True) -> None:
    p.add_argument("--cell-size", type=float, default=20.0, help="output units per thread cell")
    p.add_argument("--show-grid", action="store_true", help="draw the thread grid")
    p.add_argument("--stroke", default="white", help="stitch colour")
    p.add_argument("--background", default="indigo", help="cloth colour")
    p.add_argument("--gap-fraction", type=float, default=0.15, help="unstitched fraction at stitch ends")
    if ascii_flags:
        p.add_argument("--ascii-safe", action="store_true", help="plain ASCII glyphs instead of box drawing")


def _add_design_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("--rows", type=_word_type, help="row phase word (bitstring or shorthand)")
    p.add_argument("--cols", type=_word_type, help="column phase word (bitstring or shorthand)")
    p.add_argument("--pattern", help="pattern file with rows=.../cols=... lines")


def _add_out(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", help="write output to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sashiko",
        description="Generate and analyse hitomezashi designs and kogin thread charts.",
        epilog="Bitstrings read left to right as line 0 upward: leftmost character "
        "is the bottom row or leftmost column.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="render a design as SVG or ASCII")
    _add_design_input(p)
    p.add_argument("--format", choices=("svg", "ascii"), default="svg")
    p.add_argument("--side", choices=("front", "back"), default="front")
    p.add_argument("--mirror-back", action="store_true", help="mirror the back view left-right")
    p.add_argument("--stage", choices=STAGES, default="combined")
    _add_render_flags(p)
    _add_out(p)
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("dual", help="emit the reverse-side pattern")
    _add_design_input(p)
    _add_out(p)
    p.set_defaults(func=_cmd_dual)

    p = sub.add_parser("decompose", help="list loops and stepped lines")
    _add_design_input(p)
    _add_out(p)
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("stats", help="one-row CSV census of a design")
    _add_design_input(p)
    _add_out(p)
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("symmetry", help="report the symmetries fixing a design")
    _add_design_input(p)
    _add_out(p)
    p.set_defaults(func=_cmd_symmetry)

    p = sub.add_parser("enumerate", help="list every design spec for given line counts")
    p.add_argument("--m", type=int, required=True, help="number of vertical lines (column word length)")
    p.add_argument("--n", type=int, required=True, help="number of horizontal lines (row word length)")
    p.add_argument("--cap", type=int, default=enumeration.DEFAULT_CAP, help="safety cap on 2**(m+n)")
    _add_out(p)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("census", help="CSV loop/path census over the design space")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=("exhaustive", "sample"), default="exhaustive")
    p.add_argument("--count", type=int, help="sample size (sample mode)")
    p.add_argument("--seed", type=int, help="sample seed (sample mode, required)")
    p.add_argument("--cap", type=int, default=enumeration.DEFAULT_CAP)
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    _add_out(p)
    p.set_defaults(func=_cmd_census)

    p = sub.add_parser("find", help="search designs containing a target polyomino")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--cells", help="target cells, e.g. '1,0;0,1;1,1;2,1;1,2'")
    p.add_argument("--snowflake-order", type=int, help="use a snowflake polyomino as the target")
    p.add_argument("--up-to-symmetry", action="store_true", help="match any of the 8 orientations")
    p.add_argument("--cap", type=int, default=enumeration.DEFAULT_CAP)
    p.add_argument("--jobs", type=int, default=1)
    _add_out(p)
    p.set_defaults(func=_cmd_find)

    p = sub.add_parser("snowflake", help="emit a Fibonacci snowflake boundary")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--format", choices=("steps", "svg"), default="steps")
    _add_render_flags(p, ascii_flags=False)
    _add_out(p)
    p.set_defaults(func=_cmd_snowflake)

    p = sub.add_parser("kogin-validate", help="check a chart against its parity mode")
    p.add_argument("--motif", help=f"bundled motif name ({', '.join(kogin.MOTIF_NAMES)})")
    p.add_argument("--chart", help="chart file")
    p.add_argument("--strict", action="store_true", help="kogin strict: lengths must be 1, 3 or 5")
    _add_out(p)
    p.set_defaults(func=_cmd_kogin_validate)

    p = sub.add_parser("kogin-render", help="render a chart as SVG")
    p.add_argument("--motif", help="bundled motif name")
    p.add_argument("--chart", help="chart file")
    _add_render_flags(p, ascii_flags=False)
    _add_out(p)
    p.set_defaults(func=_cmd_kogin_render)

    p = sub.add_parser("motif-list", help="list bundled motif names")
    _add_out(p)
    p.set_defaults(func=_cmd_motif_list)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, parser)
    except SystemExit as exc:  # parser.error inside handlers
        return int(exc.code or 0)
    except SashikoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 3


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
