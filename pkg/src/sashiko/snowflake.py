"""Fibonacci snowflakes: closed lattice paths from Fibonacci turn words.

The turn words follow the recurrence

    q_0 = "" ,  q_1 = "R",
    q_n = q_{n-1} + q_{n-2}        when n % 3 == 2,
    q_n = q_{n-1} + swap(q_{n-2})  otherwise,

where swap exchanges L and R; |q_n| is the n-th Fibonacci number.  The
order-k snowflake boundary repeats one such segment four times, each
repetition contributing a net quarter turn, so closure is automatic;
simplicity (no revisited vertex) is checked explicitly.  The builder
validates everything it claims - closure, simplicity, the perimeter law
(4 x an odd Fibonacci number), and the order-0 (unit square) and
order-1 (plus-pentomino) shape identities - and refuses to return a
snowflake that fails the gate.

Path convention: start at the origin heading east; for each turn letter,
step one unit forward, then turn 90 degrees (L anticlockwise, R
clockwise).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .analysis import PLUS_PENTOMINO, Polyomino, enclosed_cells
from .core import Edge, SashikoError

__all__ = [
    "TurnWord",
    "Snowflake",
    "SnowflakeConstructionError",
    "MAX_ORDER",
    "odd_fibonacci",
    "turn_word",
    "swap_letters",
    "build_snowflake",
    "is_snowflake",
]

MAX_ORDER = 16


class SnowflakeConstructionError(SashikoError):
    """The assembled boundary failed validation (not closed/simple/sized)."""


@dataclass(frozen=True)
class TurnWord:
    """A turn sequence over {L, R} with its generation index."""

    letters: str
    order: int


def swap_letters(word: str) -> str:
    """Exchange L and R throughout."""
    return word.translate(str.maketrans("LR", "RL"))


@lru_cache(maxsize=None)
def _turn_letters(n: int) -> str:
    if n == 0:
        return ""
    if n == 1:
        return "R"
    prev, prev2 = _turn_letters(n - 1), _turn_letters(n - 2)
    if n % 3 == 2:
        return prev + prev2
    return prev + swap_letters(prev2)


def turn_word(n: int) -> TurnWord:
    """The n-th turn word; its length is the n-th Fibonacci number."""
    if n < 0:
        raise ValueError(f"turn word index must be >= 0, got {n}")
    return TurnWord(_turn_letters(n), n)


def odd_fibonacci(k: int) -> int:
    """The (k+1)-th distinct odd value in the Fibonacci sequence.

    1, 3, 5, 13, 21, 55, 89, ... (every third Fibonacci number is even
    and is skipped; the repeated leading 1 counts once).
    """
    if k < 0:
        raise ValueError(f"index must be >= 0, got {k}")
    seen = 0
    last = None
    a, b = 1, 1
    while True:
        if a % 2 == 1 and a != last:
            if seen == k:
                return a
            seen += 1
            last = a
        a, b = b, a + b


def _segment_index(k: int) -> int:
    """Generation index of the turn segment for the order-k snowflake.

    Walks the indices >= 2 whose Fibonacci number is odd (n % 3 != 0),
    so the segment length is exactly odd_fibonacci(k).
    """
    n = 2
    remaining = k
    while True:
        if n % 3 != 0:
            if remaining == 0:
                return n
            remaining -= 1
        n += 1


_STEPS = {"E": (1, 0), "N": (0, 1), "W": (-1, 0), "S": (0, -1)}
_TURN_LEFT = {"E": "N", "N": "W", "W": "S", "S": "E"}
_TURN_RIGHT = {v: k for k, v in _TURN_LEFT.items()}


@dataclass(frozen=True)
class Snowflake:
    """A validated snowflake boundary and its enclosed polyomino.

    ``boundary`` lists the visited vertices in traversal order, starting
    and ending at the origin (so it has perimeter + 1 entries);
    ``steps`` is the same walk as compass letters.
    """

    order: int
    boundary: tuple[tuple[int, int], ...]
    steps: str
    polyomino: Polyomino
    perimeter: int


def _trace(word: str) -> tuple[list[tuple[int, int]], str]:
    x, y = 0, 0
    heading = "E"
    vertices = [(0, 0)]
    steps = []
    for letter in word:
        dx, dy = _STEPS[heading]
        x, y = x + dx, y + dy
        vertices.append((x, y))
        steps.append(heading)
        heading = _TURN_LEFT[heading] if letter == "L" else _TURN_RIGHT[heading]
    return vertices, "".join(steps)


@lru_cache(maxsize=None)
def build_snowflake(order: int) -> Snowflake:
    """Assemble and validate the order-k snowflake.

    Raises SnowflakeConstructionError if the boundary fails any part of
    the validation gate; that failure mode is loud by design, since the
    gate is what certifies the turn-word assembly.  Orders 0 through 3
    build (perimeters 4, 12, 20, 52), as does every odd order above
    them; for even orders >= 4 the assembled boundary self-intersects
    and the gate rejects it.
    """
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    if order > MAX_ORDER:
        raise ValueError(f"order {order} exceeds the supported maximum {MAX_ORDER}")
    segment = _turn_letters(_segment_index(order))
    vertices, steps = _trace(segment * 4)

    if vertices[-1] != vertices[0]:
        raise SnowflakeConstructionError(f"order {order}: boundary does not close")
    interior = vertices[:-1]
    if len(set(interior)) != len(interior):
        raise SnowflakeConstructionError(f"order {order}: boundary revisits a vertex")
    perimeter = len(interior)
    expected = 4 * odd_fibonacci(order)
    if perimeter != expected:
        raise SnowflakeConstructionError(
            f"order {order}: perimeter {perimeter} != 4 x odd Fibonacci = {expected}"
        )

    edges = [_step_edge(vertices[i], vertices[i + 1]) for i in range(perimeter)]
    polyomino = Polyomino.from_cells(enclosed_cells(edges))

    if order == 0 and polyomino.cells != frozenset({(0, 0)}):
        raise SnowflakeConstructionError("order 0 is not the unit square")
    if order == 1 and polyomino.cells != PLUS_PENTOMINO.cells:
        raise SnowflakeConstructionError("order 1 is not the plus-pentomino")

    return Snowflake(order, tuple(vertices), steps, polyomino, perimeter)


def _step_edge(a: tuple[int, int], b: tuple[int, int]) -> Edge:
    (x0, y0), (x1, y1) = sorted((a, b))
    if y0 == y1:
        return Edge("H", x0, y0)
    return Edge("V", x0, y0)


def is_snowflake(p: Polyomino, max_order: int = 8) -> Optional[int]:
    """The smallest order whose snowflake matches ``p`` up to the 8
    square symmetries, or None.  Unbuildable orders are skipped."""
    target = p.canonical_under_symmetry()
    for k in range(min(max_order, MAX_ORDER) + 1):
        try:
            flake = build_snowflake(k)
        except SnowflakeConstructionError:
            continue
        if flake.polyomino.area != target.area:
            continue
        if flake.polyomino.canonical_under_symmetry() == target:
            return k
    return None
