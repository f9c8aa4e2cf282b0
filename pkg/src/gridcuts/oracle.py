"""Brute-force ground truth by exhaustive left-half sweeps.

Every width-n board that satisfies the complement rule is determined by its
left half, so sweeping all 2^(m*k) left halves (k = ceil(n/2)) enumerates the
candidates exhaustively.  Boards are packed into 64-bit integers, cell (i, j)
at bit j*m + i, and connectivity of each label is checked by a vectorized
flood fill: grow the lowest set bit to its 4-neighbourhood until a fixed
point and compare with the full label mask.  This stays a per-candidate
brute-force check; nothing here shares logic with the column automaton it is
used to validate.

Three counting conventions are reported side by side because they genuinely
differ: `canonical` counts matrices satisfying the stipulations (the
sequence's convention), `cuts` counts unordered bipartitions (= matrices/2),
and `orbits` counts cuts up to horizontal reflection.  At width 2 they are
3, 4 and 3.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .board import Board, ColumnPattern, Cut, is_graham, transform
from . import reference

__all__ = [
    "BudgetError",
    "CountReport",
    "DEFAULT_BUDGET",
    "FigureMismatch",
    "board_from_int",
    "board_to_int",
    "count_report",
    "delahaye_formula",
    "delahaye_report",
    "enumerate_canonical",
    "regenerate_figures",
    "sweep",
]

DEFAULT_BUDGET = 1 << 28
BUDGET_ENV_VAR = "GRIDCUTS_BUDGET"

_CHUNK = 1 << 19


class BudgetError(RuntimeError):
    """The sweep would exceed the candidate budget; nothing was computed."""


class FigureMismatch(RuntimeError):
    """A reference gallery board failed verification."""


def default_budget() -> int:
    value = os.environ.get(BUDGET_ENV_VAR)
    return int(value) if value else DEFAULT_BUDGET


def board_to_int(board: Board) -> int:
    value = 0
    for j, col in enumerate(board.columns()):
        value |= col.encode() << (j * board.m)
    return value


def board_from_int(m: int, n: int, value: int) -> Board:
    mask = (1 << m) - 1
    cols = [ColumnPattern.decode(m, (value >> (j * m)) & mask) for j in range(n)]
    return Board.from_columns(cols)


def _revcomp_int(m: int, value: int) -> int:
    rev = 0
    for i in range(m):
        rev |= ((value >> i) & 1) << (m - 1 - i)
    return rev ^ ((1 << m) - 1)


def _connected(bits: np.ndarray, m: int, full: int, not_top: int, not_bottom: int) -> np.ndarray:
    """Element-wise: bits is nonzero and forms one 4-connected region."""
    if bits.size == 0:
        return np.zeros(0, dtype=bool)
    u = np.uint64
    alive = bits != 0
    # lowest set bit as flood seed; dead entries produce garbage, masked later
    seeded = np.where(alive, bits, u(1))
    cur = seeded & (~seeded + u(1))
    while True:
        grown = cur | ((cur & u(not_top)) >> u(1))
        grown = grown | ((cur & u(not_bottom)) << u(1))
        grown = grown | (cur >> u(m))
        grown = grown | ((cur << u(m)) & u(full))
        grown &= bits
        grown |= cur
        if np.array_equal(grown, cur):
            break
        cur = grown
    return alive & (cur == bits)


@dataclass(frozen=True)
class SweepResult:
    """All complement-rule boards of one shape, as sorted bitboard integers."""

    m: int
    n: int
    graham: tuple[int, ...]
    canonical: tuple[int, ...]
    elapsed_ms: float


_SWEEP_CACHE: dict[tuple[int, int], SweepResult] = {}


def _candidate_count(m: int, n: int) -> int:
    return 1 << (m * ((n + 1) // 2))


def _sweep_range(m: int, n: int, start: int, stop: int, step: int) -> list[int]:
    """Graham bitboards among candidates start, start+step, ... (< stop)."""
    k = (n + 1) // 2
    mask_m = (1 << m) - 1
    full = (1 << (m * n)) - 1
    top = sum(1 << (j * m) for j in range(n))
    not_top = full & ~top
    not_bottom = full & ~(top << (m - 1))
    rc_table = np.array([_revcomp_int(m, v) for v in range(1 << m)], dtype=np.uint64)
    u = np.uint64

    found: list[int] = []
    chunk = max(_CHUNK * step, step)
    for lo in range(start, stop, chunk):
        cand = np.arange(lo, min(lo + chunk, stop), step, dtype=np.uint64)
        if n % 2 == 1:
            mid = (cand >> u(m * (k - 1))) & u(mask_m)
            cand = cand[rc_table[mid] == mid]
            if cand.size == 0:
                continue
        boards = cand.copy()
        for j in range(n // 2):
            col = (cand >> u(j * m)) & u(mask_m)
            boards |= rc_table[col] << u((n - 1 - j) * m)
        ok1 = _connected(boards, m, full, not_top, not_bottom)
        boards = boards[ok1]
        ok0 = _connected(~boards & u(full), m, full, not_top, not_bottom)
        found.extend(int(b) for b in boards[ok0])
    return found


def sweep(m: int, n: int, *, budget: int | None = None, workers: int = 1,
          use_cache: bool = True) -> SweepResult:
    """Enumerate every complement-rule two-component board of the given shape.

    Raises BudgetError (never truncates) if 2^(m*ceil(n/2)) exceeds the
    budget.  The sweep is partitioned by the first column's value when
    workers > 1 and merged into one sorted list, so results do not depend on
    the worker count.
    """
    if m < 1 or n < 0:
        raise ValueError(f"bad shape {m}x{n}")
    budget = default_budget() if budget is None else budget
    raw = _candidate_count(m, n)
    if n > 0 and raw > budget:
        # checked before the cache so exit codes do not depend on prior calls
        raise BudgetError(
            f"shape {m}x{n} needs {raw} candidates, budget is {budget}; "
            f"raise --budget or {BUDGET_ENV_VAR} to run it"
        )
    if use_cache and (m, n) in _SWEEP_CACHE:
        return _SWEEP_CACHE[(m, n)]
    started = time.perf_counter()
    if n == 0:
        graham: list[int] = []
    elif workers <= 1:
        graham = _sweep_range(m, n, 0, raw, 1)
    else:
        # one task per first-column value, merged in a fixed order
        tasks = [(m, n, first, raw, 1 << m) for first in range(1 << m)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_sweep_worker, tasks))
        graham = [b for part in parts for b in part]
    graham.sort()

    if m * n % 2 == 1:
        assert not graham
    assert len(graham) % 2 == 0, "complement pairs make the matrix count even"

    k = (n + 1) // 2
    mask_m = (1 << m) - 1
    bottom_left = sum(1 << (j * m + m - 1) for j in range(k))
    canonical = [
        b for b in graham
        if (b & bottom_left) == 0 and 2 * int.bit_count(b & mask_m) <= m
    ]
    elapsed_ms = (time.perf_counter() - started) * 1000.0
    result = SweepResult(m, n, tuple(graham), tuple(canonical), elapsed_ms)
    if use_cache:
        _SWEEP_CACHE[(m, n)] = result
    return result


def _sweep_worker(args: tuple[int, int, int, int, int]) -> list[int]:
    return _sweep_range(*args)


@dataclass(frozen=True)
class CountReport:
    """The three counting conventions for one board shape."""

    m: int
    n: int
    canonical: int
    cuts: int
    orbits: int
    elapsed_ms: float
    canonical_validated: bool

    def to_json_dict(self, *, timings: bool = True) -> dict:
        data = {
            "m": self.m,
            "n": self.n,
            "canonical": self.canonical,
            "cuts": self.cuts,
            "orbits": self.orbits,
        }
        if timings:
            data["elapsed_ms"] = self.elapsed_ms
        if not self.canonical_validated:
            data["canonical_validated"] = False
        return data


def count_report(m: int, n: int, *, budget: int | None = None, workers: int = 1,
                 use_cache: bool = True) -> CountReport:
    """Count canonical matrices, cuts and reflection orbits by full sweep."""
    if not 1 <= m <= 6:
        raise ValueError(f"row count {m} outside the validated sweep range 1..6")
    result = sweep(m, n, budget=budget, workers=workers, use_cache=use_cache)
    cuts = len(result.graham) // 2

    comp = (1 << (m * n)) - 1
    cut_reps = {min(b, b ^ comp) for b in result.graham}
    orbit_reps = set()
    for rep in cut_reps:
        flipped = board_to_int(transform(board_from_int(m, n, rep), "hflip")) if n else rep
        orbit_reps.add(min(rep, min(flipped, flipped ^ comp)))
    orbits = len(orbit_reps)
    assert orbits <= cuts <= 2 * orbits or cuts == 0

    return CountReport(
        m=m,
        n=n,
        canonical=len(result.canonical),
        cuts=cuts,
        orbits=orbits,
        elapsed_ms=result.elapsed_ms,
        canonical_validated=(m == 4),
    )


def enumerate_canonical(m: int, n: int, *, budget: int | None = None,
                        workers: int = 1, use_cache: bool = True) -> list[Board]:
    """All canonical boards of shape m x n, sorted by their cell arrays.

    The stipulations are validated for m = 4 only, so other row counts are
    rejected here; use count_report for flagged counts at other m.
    """
    if m != 4:
        raise ValueError("canonical enumeration is defined for m=4 boards")
    result = sweep(m, n, budget=budget, workers=workers, use_cache=use_cache)
    boards = [board_from_int(m, n, b) for b in result.canonical]
    boards.sort(key=lambda b: b.cells)
    return boards


def delahaye_formula(n: int) -> int:
    """Closed form 2^(n+1) - n - 1 for the known 3 x 2n cut count."""
    return (1 << (n + 1)) - n - 1


def delahaye_report(n: int, *, budget: int | None = None, workers: int = 1) -> dict:
    """Put the 3 x 2n closed form next to the oracle's own counts.

    No equality is asserted; the report records which conventions the
    closed form happens to match.  Empirically (n <= 6) it matches the
    reflection-orbit and stipulation counts, not the raw cut count: at
    n = 3 the formula gives 12 while the sweep finds 23 cuts in 12 orbits.
    """
    if n < 1 or n > 6:
        raise ValueError("half-width n must be in 1..6")
    report = count_report(3, 2 * n, budget=budget, workers=workers)
    formula = delahaye_formula(n)
    return {
        "n": n,
        "formula": formula,
        "cuts": report.cuts,
        "orbits": report.orbits,
        "canonical": report.canonical,
        "formula_matches_cuts": formula == report.cuts,
        "formula_matches_orbits": formula == report.orbits,
    }


def regenerate_figures(*, budget: int | None = None) -> dict[str, list[Board]]:
    """Verify and return the two reference galleries.

    The twelve 4x6 boards must all appear in the canonical enumeration; the
    twelve 3x6 boards must be valid two-component complement-rule boards and
    satisfy the (unvalidated for m=3) stipulations.  Any offender is listed
    in the raised FigureMismatch.
    """
    bad: list[str] = []

    canonical_4x6 = {b.cells for b in enumerate_canonical(4, 6, budget=budget)}
    for idx, board in enumerate(reference.GALLERY_4X6):
        if board.cells not in canonical_4x6:
            bad.append(f"4x6 gallery board {idx} is not in the canonical enumeration:\n{board.to_ascii()}")

    k = 3  # left half of width 6
    for idx, board in enumerate(reference.GALLERY_3X6):
        if not is_graham(board):
            bad.append(f"3x6 gallery board {idx} is not a valid cut:\n{board.to_ascii()}")
            continue
        if any(board.cells[board.m - 1][j] != 0 for j in range(k)):
            bad.append(f"3x6 gallery board {idx} violates the bottom-row stipulation:\n{board.to_ascii()}")

    if bad:
        raise FigureMismatch("\n\n".join(bad))
    return {
        "three_by_six": list(reference.GALLERY_3X6),
        "four_by_six": list(reference.GALLERY_4X6),
    }


def graham_cuts(m: int, n: int, **kwargs) -> list[Cut]:
    """All distinct cuts of the shape, as canonical-pair representatives."""
    result = sweep(m, n, **kwargs)
    comp = (1 << (m * n)) - 1
    reps = sorted({min(b, b ^ comp) for b in result.graham})
    return [Cut.from_board(board_from_int(m, n, rep)) for rep in reps]
