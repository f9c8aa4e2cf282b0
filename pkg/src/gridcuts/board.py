"""Exact 0/1 boards and the central-complement cut model.

A cut of an m x n grid into two congruent connected pieces is modelled as a
0/1 matrix in which the two labels mark the two pieces.  Congruence is the
central-complement rule

    cells[i][j] = 1 - cells[m-1-i][n-1-j]

(the two pieces are swapped by a half-turn of the board), and validity
additionally requires each label to form a single 4-adjacent component.
Matrices with both properties are called Graham matrices here.

Such a matrix is determined by its left half (columns 0..ceil(n/2)-1; for odd
n the middle column must equal its own reversed complement).  The canonical
representative used for counting fixes two stipulations: the left half of the
bottom row is all zeros, and the first column has at least as many zeros as
ones.  The stipulations are only validated for m = 4; `is_canonical` warns on
other row counts.

Everything in this module is an immutable value; all functions are pure.
"""

from __future__ import annotations

import json
import re
import warnings
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "Board",
    "BOARD_TRANSFORMS",
    "CanonicalConventionWarning",
    "ColumnPattern",
    "Cut",
    "boards_from_svg",
    "boards_to_svg",
    "complete_board",
    "component_counts",
    "is_canonical",
    "is_graham",
    "is_self_revcomp",
    "revcomp",
    "satisfies_complement_rule",
    "transform",
]

SVG_FILL_ZERO = "#f4ecd8"
SVG_FILL_ONE = "#3a6ea5"

BOARD_TRANSFORMS = ("hflip", "vflip", "rot180", "complement")


class CanonicalConventionWarning(UserWarning):
    """The canonical stipulations are only validated for 4-row boards."""


@dataclass(frozen=True)
class ColumnPattern:
    """One grid column, read top to bottom; labels are 0 or 1.

    Bit 0 of the integer encoding is the top row, so a column doubles as an
    automaton symbol and as a slice of the bitboards used by the oracle.
    """

    bits: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 1 <= len(self.bits) <= 8:
            raise ValueError(f"column height {len(self.bits)} outside 1..8")
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError(f"column bits must be 0/1: {self.bits}")

    @property
    def m(self) -> int:
        return len(self.bits)

    def encode(self) -> int:
        value = 0
        for i, b in enumerate(self.bits):
            value |= b << i
        return value

    @classmethod
    def decode(cls, m: int, value: int) -> "ColumnPattern":
        if not 0 <= value < (1 << m):
            raise ValueError(f"column value {value} outside [0, 2^{m})")
        return cls(tuple((value >> i) & 1 for i in range(m)))

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)


def revcomp(col: ColumnPattern) -> ColumnPattern:
    """Reverse a column top-to-bottom and flip every label.

    This is the central-complement rule restricted to one column: column j of
    a valid board determines column n-1-j as its reversed complement.  It is
    an involution.
    """
    return ColumnPattern(tuple(1 - b for b in reversed(col.bits)))


def is_self_revcomp(col: ColumnPattern) -> bool:
    """True for columns that may sit in the middle of an odd-width board."""
    return revcomp(col) == col


@dataclass(frozen=True)
class Board:
    """An m x n grid of 0/1 labels, row-major, cells[i][j] = row i, column j."""

    cells: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if not self.cells or not self.cells[0]:
            raise ValueError("board must have at least one row and one column")
        width = len(self.cells[0])
        for row in self.cells:
            if len(row) != width:
                raise ValueError("ragged board")
            if any(c not in (0, 1) for c in row):
                raise ValueError("board cells must be 0/1")

    @property
    def m(self) -> int:
        return len(self.cells)

    @property
    def n(self) -> int:
        return len(self.cells[0])

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "Board":
        return cls(tuple(tuple(int(c) for c in row) for row in rows))

    @classmethod
    def from_columns(cls, columns: Sequence[ColumnPattern]) -> "Board":
        if not columns:
            raise ValueError("board must have at least one column")
        m = columns[0].m
        if any(col.m != m for col in columns):
            raise ValueError("columns of mixed height")
        return cls(tuple(tuple(col.bits[i] for col in columns) for i in range(m)))

    def columns(self) -> tuple[ColumnPattern, ...]:
        return tuple(
            ColumnPattern(tuple(self.cells[i][j] for i in range(self.m)))
            for j in range(self.n)
        )

    def left_half(self) -> tuple[ColumnPattern, ...]:
        """Columns 0..ceil(n/2)-1; for odd n this includes the middle column."""
        return self.columns()[: (self.n + 1) // 2]

    # -- serialization ----------------------------------------------------

    def to_json_dict(self) -> dict:
        return {"m": self.m, "n": self.n, "rows": [list(row) for row in self.cells]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(",", ":"))

    @classmethod
    def from_json_dict(cls, data: dict) -> "Board":
        board = cls.from_rows(data["rows"])
        if board.m != data.get("m", board.m) or board.n != data.get("n", board.n):
            raise ValueError("board JSON dimensions disagree with rows")
        return board

    @classmethod
    def from_json(cls, text: str) -> "Board":
        return cls.from_json_dict(json.loads(text))

    def to_ascii(self) -> str:
        return "\n".join("".join("#" if c else "." for c in row) for row in self.cells)

    @classmethod
    def from_ascii(cls, text: str) -> "Board":
        rows = []
        for line in text.strip().splitlines():
            line = line.strip()
            if not line:
                continue
            if set(line) - {"#", "."}:
                raise ValueError(f"ascii board line {line!r} has characters other than '#' and '.'")
            rows.append(tuple(1 if ch == "#" else 0 for ch in line))
        return cls(tuple(rows))

    def to_svg(self, *, scale: int = 24) -> str:
        return (
            f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {self.n} {self.m}" '
            f'width="{self.n * scale}" height="{self.m * scale}">\n'
            + svg_board_group(self)
            + "\n</svg>\n"
        )

    @classmethod
    def from_svg(cls, text: str) -> "Board":
        boards = boards_from_svg(text)
        if len(boards) != 1:
            raise ValueError(f"expected one board in SVG, found {len(boards)}")
        return boards[0]


def svg_board_group(board: Board, *, dx: int = 0, dy: int = 0) -> str:
    """A <g class="board"> of unit rects; shared by single- and multi-board SVG."""
    parts = [f'<g class="board" transform="translate({dx},{dy})">']
    for i, row in enumerate(board.cells):
        for j, c in enumerate(row):
            fill = SVG_FILL_ONE if c else SVG_FILL_ZERO
            parts.append(
                f'<rect x="{j}" y="{i}" width="1" height="1" fill="{fill}" '
                f'stroke="#555" stroke-width="0.02"/>'
            )
    parts.append("</g>")
    return "\n".join(parts)


def boards_to_svg(boards: Sequence[Board], *, scale: int = 24) -> str:
    """One SVG document with the boards stacked vertically, one unit apart."""
    if not boards:
        raise ValueError("no boards to render")
    width = max(b.n for b in boards)
    height = sum(b.m + 1 for b in boards) - 1
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width} {height}" '
        f'width="{width * scale}" height="{height * scale}">'
    ]
    dy = 0
    for board in boards:
        parts.append(svg_board_group(board, dy=dy))
        dy += board.m + 1
    parts.append("</svg>\n")
    return "\n".join(parts)


_SVG_GROUP_RE = re.compile(r"<g class=\"board\"[^>]*>(.*?)</g>", re.S)
_SVG_RECT_RE = re.compile(r'<rect x="(\d+)" y="(\d+)" width="1" height="1" fill="([^"]+)"')


def boards_from_svg(text: str) -> list[Board]:
    """Parse boards back out of SVG produced by this module."""
    boards = []
    for group in _SVG_GROUP_RE.findall(text):
        cells: dict[tuple[int, int], int] = {}
        for x, y, fill in _SVG_RECT_RE.findall(group):
            cells[int(y), int(x)] = 1 if fill == SVG_FILL_ONE else 0
        if not cells:
            raise ValueError("SVG board group contains no cells")
        m = max(i for i, _ in cells) + 1
        n = max(j for _, j in cells) + 1
        if len(cells) != m * n:
            raise ValueError("SVG board group is missing cells")
        boards.append(Board(tuple(tuple(cells[i, j] for j in range(n)) for i in range(m))))
    return boards


def complete_board(left: Sequence[ColumnPattern], n: int) -> Board:
    """Extend a left half to the full width-n board via the complement rule.

    `left` must hold ceil(n/2) columns; for odd n its last column is the
    middle column and must be its own reversed complement.
    """
    k = (n + 1) // 2
    if len(left) != k:
        raise ValueError(f"need {k} left columns for width {n}, got {len(left)}")
    if n % 2 == 1 and not is_self_revcomp(left[-1]):
        raise ValueError(f"middle column {left[-1]} is not its own reversed complement")
    right = [revcomp(left[j]) for j in range(n // 2)]
    return Board.from_columns(tuple(left) + tuple(reversed(right)))


def satisfies_complement_rule(board: Board) -> bool:
    """True iff cells[i][j] = 1 - cells[m-1-i][n-1-j] everywhere."""
    m, n, cells = board.m, board.n, board.cells
    return all(
        cells[i][j] == 1 - cells[m - 1 - i][n - 1 - j]
        for i in range(m)
        for j in range(n)
    )


def component_counts(board: Board) -> tuple[int, int]:
    """Number of 4-adjacent connected components of each label, (zeros, ones)."""
    m, n, cells = board.m, board.n, board.cells
    seen = [[False] * n for _ in range(m)]
    counts = [0, 0]
    for si in range(m):
        for sj in range(n):
            if seen[si][sj]:
                continue
            label = cells[si][sj]
            counts[label] += 1
            queue = deque([(si, sj)])
            seen[si][sj] = True
            while queue:
                i, j = queue.popleft()
                for ni, nj in ((i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1)):
                    if 0 <= ni < m and 0 <= nj < n and not seen[ni][nj] and cells[ni][nj] == label:
                        seen[ni][nj] = True
                        queue.append((ni, nj))
    return counts[0], counts[1]


def is_graham(board: Board) -> bool:
    """True iff the complement rule holds and each label is one component."""
    return satisfies_complement_rule(board) and component_counts(board) == (1, 1)


def transform(board: Board, op: str) -> Board:
    """Apply one of hflip / vflip / rot180 / complement.

    All four map valid boards to valid boards; rot180 equals complement on
    them, which is just the complement rule restated.
    """
    if op == "hflip":
        return Board(tuple(tuple(reversed(row)) for row in board.cells))
    if op == "vflip":
        return Board(tuple(reversed(board.cells)))
    if op == "rot180":
        return transform(transform(board, "hflip"), "vflip")
    if op == "complement":
        return Board(tuple(tuple(1 - c for c in row) for row in board.cells))
    raise ValueError(f"unknown transform {op!r}; expected one of {BOARD_TRANSFORMS}")


def is_canonical(board: Board) -> bool:
    """True iff the board is Graham and satisfies the two stipulations.

    Stipulations: the left half of the bottom row is all zeros, and column 0
    has at least as many zeros as ones.  They select the representative
    counted by the width-indexed sequence.  Derivation assumes m = 4; other
    row counts are accepted but flagged with a CanonicalConventionWarning.
    """
    if board.m != 4:
        warnings.warn(
            f"canonical stipulations are validated for 4 rows, not m={board.m}",
            CanonicalConventionWarning,
            stacklevel=2,
        )
    k = (board.n + 1) // 2
    if any(board.cells[board.m - 1][j] != 0 for j in range(k)):
        return False
    col0 = [board.cells[i][0] for i in range(board.m)]
    if sum(1 for c in col0 if c == 0) < sum(col0):
        return False
    return is_graham(board)


@dataclass(frozen=True)
class Cut:
    """An unordered bipartition of the grid: a board and its complement.

    Stored as the lexicographically smaller of the two cell arrays, so two
    boards denote the same cut iff their Cuts compare equal.
    """

    representative: Board

    @classmethod
    def from_board(cls, board: Board) -> "Cut":
        other = transform(board, "complement")
        return cls(board if board.cells <= other.cells else other)

    @property
    def boards(self) -> tuple[Board, Board]:
        return self.representative, transform(self.representative, "complement")

    def hflip(self) -> "Cut":
        return Cut.from_board(transform(self.representative, "hflip"))
