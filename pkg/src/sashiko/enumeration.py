"""Exhaustive and sampled sweeps of the design space.

Every design on m vertical and n horizontal lines is one assignment of
the two phase words, so the space has exactly 2**(m+n) members and can
be walked in lexicographic order (rows word varying slowest, line 0 as
the most significant position).  A safety cap guards against
accidentally huge sweeps; censuses may be partitioned across worker
processes and always merge back into the same deterministic table.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from multiprocessing import Pool
from typing import Iterator, Optional

from .analysis import Polyomino, StatsRecord, decompose, stats
from .core import DesignSpec, SashikoError, build_design, design_count, format_bits

__all__ = [
    "CensusTable",
    "CapExceededError",
    "DEFAULT_CAP",
    "CSV_COLUMNS",
    "enumerate_designs",
    "census",
    "find_designs_containing",
]

DEFAULT_CAP = 2 ** 24

CSV_COLUMNS = (
    "m",
    "n",
    "rows_bits",
    "cols_bits",
    "loops",
    "paths",
    "max_depth",
    "h_edges",
    "v_edges",
    "areas",
)


class CapExceededError(SashikoError):
    """A sweep would exceed the safety cap."""


def _check_cap(m: int, n: int, cap: int) -> int:
    total = design_count(m, n)
    if total > cap:
        raise CapExceededError(
            f"2**({m}+{n}) = {total} designs exceeds the safety cap of {cap}; "
            "raise the cap explicitly to proceed"
        )
    return total


def _word_at(index: int, length: int) -> tuple[int, ...]:
    # line 0 is the most significant position, so numeric order of the
    # index matches lexicographic order of the word
    return tuple((index >> (length - 1 - i)) & 1 for i in range(length))


def spec_at(index: int, m: int, n: int) -> DesignSpec:
    """The index-th spec in lexicographic (rows, cols) order."""
    return DesignSpec(_word_at(index >> m, n), _word_at(index & ((1 << m) - 1), m))


def enumerate_designs(m: int, n: int, cap: int = DEFAULT_CAP) -> Iterator[DesignSpec]:
    """Yield all 2**(m+n) specs exactly once, all-zeros first."""
    total = _check_cap(m, n, cap)
    for i in range(total):
        yield spec_at(i, m, n)


@dataclass(frozen=True)
class CensusTable:
    """Per-design census rows plus aggregate distributions.

    Aggregates are folds of the rows; in exhaustive mode the row count
    is exactly 2**(m+n).
    """

    m: int
    n: int
    mode: str
    rows: tuple[tuple[DesignSpec, StatsRecord], ...]

    @property
    def loop_histogram(self) -> dict[int, int]:
        hist: dict[int, int] = {}
        for _, rec in self.rows:
            hist[rec.loops] = hist.get(rec.loops, 0) + 1
        return hist

    @property
    def path_histogram(self) -> dict[int, int]:
        hist: dict[int, int] = {}
        for _, rec in self.rows:
            hist[rec.paths] = hist.get(rec.paths, 0) + 1
        return hist

    @property
    def area_histogram(self) -> dict[int, int]:
        hist: dict[int, int] = {}
        for _, rec in self.rows:
            for area, count in rec.area_histogram:
                hist[area] = hist.get(area, 0) + count
        return hist

    def to_csv(self) -> str:
        lines = [",".join(CSV_COLUMNS)]
        for spec, rec in self.rows:
            fields = (
                str(len(spec.cols)),
                str(len(spec.rows)),
                format_bits(spec.rows),
                format_bits(spec.cols),
                *rec.csv_fields(),
            )
            lines.append(",".join(fields))
        return "\n".join(lines) + "\n"


def _stats_chunk(args: tuple[list[int], int, int]) -> list[StatsRecord]:
    indices, m, n = args
    return [stats(build_design(spec_at(i, m, n))) for i in indices]


def _run_chunked(worker, indices: list[int], m: int, n: int, jobs: int) -> list:
    if jobs <= 1 or len(indices) < 2 * jobs:
        return worker((indices, m, n))
    size = max(1, len(indices) // (jobs * 8))
    chunks = [(indices[i : i + size], m, n) for i in range(0, len(indices), size)]
    with Pool(jobs) as pool:
        parts = pool.map(worker, chunks)
    return [item for part in parts for item in part]


def census(
    m: int,
    n: int,
    mode: str = "exhaustive",
    count: Optional[int] = None,
    seed: Optional[int] = None,
    cap: int = DEFAULT_CAP,
    jobs: int = 1,
) -> CensusTable:
    """Tabulate loop/path statistics across the design space.

    ``mode="exhaustive"`` walks every design in order; ``mode="sample"``
    draws ``count`` designs with a mandatory ``seed`` (reproducible, may
    repeat designs).  Identical arguments give byte-identical CSV
    regardless of ``jobs``.
    """
    total = _check_cap(m, n, cap)
    if mode == "exhaustive":
        indices = list(range(total))
    elif mode == "sample":
        if count is None or seed is None:
            raise ValueError("sample mode requires both count and seed")
        rng = random.Random(seed)
        indices = [rng.randrange(total) for _ in range(count)]
    else:
        raise ValueError(f"mode must be 'exhaustive' or 'sample', got {mode!r}")

    records = _run_chunked(_stats_chunk, indices, m, n, jobs)
    rows = tuple((spec_at(i, m, n), rec) for i, rec in zip(indices, records))
    return CensusTable(m, n, mode, rows)


def _find_chunk(args: tuple[list[int], int, int, frozenset[frozenset], int]) -> list[int]:
    indices, m, n, variants, area = args
    hits = []
    for i in indices:
        decomposition = decompose(build_design(spec_at(i, m, n)))
        for lp in decomposition.loops:
            if lp.area == area and lp.polyomino.cells in variants:
                hits.append(i)
                break
    return hits


def find_designs_containing(
    target: Polyomino,
    m: int,
    n: int,
    up_to_symmetry: bool = False,
    cap: int = DEFAULT_CAP,
    jobs: int = 1,
) -> list[DesignSpec]:
    """All specs whose decomposition has a loop enclosing ``target``.

    Equality is up to translation; with ``up_to_symmetry`` the 8 square
    symmetries of the target are accepted too.  Results come back in
    enumeration order.
    """
    total = _check_cap(m, n, cap)
    canonical = Polyomino.from_cells(target.cells)
    if up_to_symmetry:
        variants = frozenset(p.cells for p in canonical.symmetry_variants())
    else:
        variants = frozenset({canonical.cells})

    if jobs <= 1 or total < 2 * jobs:
        hits = _find_chunk((list(range(total)), m, n, variants, canonical.area))
    else:
        size = max(1, total // (jobs * 8))
        chunks = [
            (list(range(lo, min(lo + size, total))), m, n, variants, canonical.area)
            for lo in range(0, total, size)
        ]
        with Pool(jobs) as pool:
            parts = pool.map(_find_chunk, chunks)
        hits = [i for part in parts for i in part]
    return [spec_at(i, m, n) for i in hits]
