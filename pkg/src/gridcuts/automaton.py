"""Column-reading finite state machines that recognize valid cuts.

A board is read one column at a time, left half only.  A state is the column
just read plus a connectivity profile: the partition of that column's cells
into components of the board prefix, per label.  Reading a next column merges
profile blocks with the new column's vertical runs through row-wise
adjacency; a block that touches no cell of the new column can never grow
again, and since the completed board always holds further cells of its label,
the word is rejected immediately.

Acceptance is decided from the final state alone.  The right half of the
board is the half-turn complement of the left half, so its component
structure at the seam is the mirror image of the final profile with labels
flipped.  For even widths the profile and its mirror sit on adjacent columns
and are glued where labels agree across the seam; for odd widths the final
column is the shared middle column (it must equal its own reversed
complement) and the two partitions are glued cell by cell.  The word is
accepted iff the glued structure has exactly one block of each label.

Two modes share this machinery.  The canonical machine (m = 4) restricts the
alphabet to the eight columns with a 0 bottom cell and starts from the three
columns a stipulation-canonical board can begin with; every accepted word is
one canonical board.  The general machine uses all 2^m columns and every
column as a start, so each cut is accepted twice, once per labelling
(divisor 2).  After construction, states from which no accepting state is
reachable are trimmed; this never removes a state that lies on some
accepting path.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

from .board import ColumnPattern, revcomp

__all__ = [
    "Automaton",
    "ConnectivityProfile",
    "State",
    "StateExplosionError",
    "TransferMatrix",
    "acceptance",
    "accepted_words",
    "always_rejected_columns",
    "automaton_from_dot",
    "automaton_from_json",
    "build_canonical",
    "build_general",
    "permutation_similarity_witness",
    "start_state",
    "step_state",
    "to_dot",
    "to_json",
    "transfer_matrix",
]

CANONICAL_START_BITS = ((0, 0, 0, 0), (1, 0, 0, 0), (1, 1, 0, 0))

DEFAULT_STATE_CAP = 20_000


class StateExplosionError(RuntimeError):
    """State closure exceeded the configured cap."""


Blocks = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class ConnectivityProfile:
    """Partition of one column's cells into live components, per label.

    Blocks hold row indices; every cell of the column sits in exactly one
    block of its label's partition.  `dead` marks the reject sink; it never
    appears in a built machine (rejection is immediate).
    """

    zero_blocks: Blocks
    one_blocks: Blocks
    dead: bool = False

    def sort_key(self) -> tuple:
        return (self.zero_blocks, self.one_blocks, self.dead)


@dataclass(frozen=True)
class State:
    column: ColumnPattern
    profile: ConnectivityProfile

    def sort_key(self) -> tuple:
        return (self.column.encode(), self.profile.sort_key())


class _DSU:
    def __init__(self, size: int) -> None:
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def _runs(col: ColumnPattern) -> list[tuple[int, tuple[int, ...]]]:
    """Maximal vertical runs of equal label, as (label, rows)."""
    runs = []
    start = 0
    bits = col.bits
    for i in range(1, len(bits) + 1):
        if i == len(bits) or bits[i] != bits[start]:
            runs.append((bits[start], tuple(range(start, i))))
            start = i
    return runs


def _profile_from_blocks(labelled: list[tuple[int, tuple[int, ...]]]) -> ConnectivityProfile:
    zeros = tuple(sorted(rows for label, rows in labelled if label == 0))
    ones = tuple(sorted(rows for label, rows in labelled if label == 1))
    return ConnectivityProfile(zeros, ones)


def start_state(col: ColumnPattern) -> State:
    """State after reading `col` as the first column: blocks are its runs."""
    return State(col, _profile_from_blocks(_runs(col)))


def step_state(state: State, col: ColumnPattern) -> State | None:
    """Read one more column; None means the word can never be completed.

    The new column's runs are united with the previous blocks wherever the
    labels agree row-wise.  Any previous block left untouched has lost its
    frontier and is rejected on the spot.  Runs touched by no block simply
    start new components.
    """
    prev = state.column.bits
    if len(prev) != col.m:
        raise ValueError("column height mismatch")
    blocks = [(0, rows) for rows in state.profile.zero_blocks]
    blocks += [(1, rows) for rows in state.profile.one_blocks]
    runs = _runs(col)

    block_at = {}
    for idx, (_, rows) in enumerate(blocks):
        for i in rows:
            block_at[i] = idx
    run_at = {}
    for idx, (_, rows) in enumerate(runs):
        for i in rows:
            run_at[i] = idx

    dsu = _DSU(len(blocks) + len(runs))
    for i in range(col.m):
        if prev[i] == col.bits[i]:
            dsu.union(block_at[i], len(blocks) + run_at[i])

    touched = {dsu.find(len(blocks) + r) for r in range(len(runs))}
    if any(dsu.find(b) not in touched for b in range(len(blocks))):
        return None

    merged: dict[int, list[int]] = {}
    for idx, (_, rows) in enumerate(runs):
        merged.setdefault(dsu.find(len(blocks) + idx), []).extend(rows)
    labelled = [
        (col.bits[rows[0]], tuple(sorted(rows))) for rows in merged.values()
    ]
    return State(col, _profile_from_blocks(labelled))


def acceptance(state: State) -> tuple[bool, bool]:
    """(even, odd) acceptance, computed from the state alone.

    The mirror image of a block (rows R, label L) is (rows m-1-R, label 1-L);
    the mirrored profile describes the right half at the seam.  Even: glue
    across the seam at rows where the final column and its reversed
    complement agree.  Odd: the final column is the middle column, shared by
    both halves, so glue at every row; this requires the column to be its own
    reversed complement.
    """
    col = state.column
    m = col.m
    rc = revcomp(col)
    blocks = [(0, rows) for rows in state.profile.zero_blocks]
    blocks += [(1, rows) for rows in state.profile.one_blocks]
    nblocks = len(blocks)
    block_at = {}
    for idx, (_, rows) in enumerate(blocks):
        for i in rows:
            block_at[i] = idx

    def glued_ok(rows_to_glue: Iterator[int]) -> bool:
        # node b = left block b, node nblocks + b = its mirror image
        dsu = _DSU(2 * nblocks)
        for i in rows_to_glue:
            dsu.union(block_at[i], nblocks + block_at[m - 1 - i])
        labels = {}
        counts = [0, 0]
        for node in range(2 * nblocks):
            label = blocks[node][0] if node < nblocks else 1 - blocks[node - nblocks][0]
            root = dsu.find(node)
            if root not in labels:
                labels[root] = label
                counts[label] += 1
        return counts == [1, 1]

    even = glued_ok(i for i in range(m) if col.bits[i] == rc.bits[i])
    odd = col == rc and glued_ok(iter(range(m)))
    return even, odd


@dataclass(frozen=True)
class Automaton:
    """A built machine: ordered states, transitions, start and accept sets.

    `transitions` holds (from_index, symbol, to_index) with the symbol as the
    column's integer encoding.  `divisor` is how many accepted words denote
    the same cut (1 canonical, 2 general).
    """

    m: int
    mode: str
    divisor: int
    alphabet: tuple[ColumnPattern, ...]
    states: tuple[State, ...]
    start: tuple[int, ...]
    transitions: tuple[tuple[int, int, int], ...]
    accept_even: tuple[int, ...]
    accept_odd: tuple[int, ...]

    @cached_property
    def _edge_map(self) -> dict[tuple[int, int], int]:
        return {(src, sym): dst for src, sym, dst in self.transitions}

    @cached_property
    def _alphabet_set(self) -> frozenset[ColumnPattern]:
        return frozenset(self.alphabet)

    @cached_property
    def _state_index(self) -> dict[State, int]:
        return {state: idx for idx, state in enumerate(self.states)}

    def step(self, state: State, col: ColumnPattern) -> State | None:
        """One transition; None when the word can no longer be completed.

        Uses the trimmed transition table, so this also returns None for
        moves whose profile survives but can never reach acceptance (the raw
        profile update is `step_state`).
        """
        if col not in self._alphabet_set:
            raise ValueError(f"column {col} is not in the machine's alphabet")
        src = self._state_index.get(state)
        if src is None:
            return step_state(state, col)
        dst = self._edge_map.get((src, col.encode()))
        return None if dst is None else self.states[dst]

    def run(self, word: Sequence[ColumnPattern]) -> State | None:
        """Final state after a non-empty word, or None once rejected."""
        if not word:
            raise ValueError("empty word")
        for col in word:
            if col not in self._alphabet_set:
                raise ValueError(f"column {col} is not in the machine's alphabet")
        state = start_state(word[0])
        idx = self._state_index.get(state)
        if idx is None or idx not in self.start:
            return None
        for col in word[1:]:
            state = self.step(state, col)
            if state is None:
                return None
        return state

    def accepts(self, word: Sequence[ColumnPattern], n: int) -> bool:
        """Does the word encode a valid board of width n?"""
        if len(word) != (n + 1) // 2:
            return False
        state = self.run(word)
        if state is None:
            return False
        even, odd = acceptance(state)
        return even if n % 2 == 0 else odd

    def count_boards(self, n: int) -> int:
        """Number of width-n boards this machine accepts, over its divisor."""
        if n <= 0:
            return 0
        k = (n + 1) // 2
        accept = self.accept_even if n % 2 == 0 else self.accept_odd
        vec = [0] * len(self.states)
        for idx in self.start:
            vec[idx] += 1
        for _ in range(k - 1):
            nxt = [0] * len(self.states)
            for src, _, dst in self.transitions:
                nxt[dst] += vec[src]
            vec = nxt
        total = sum(vec[idx] for idx in accept)
        assert total % self.divisor == 0
        return total // self.divisor


def _build(m: int, mode: str, alphabet: tuple[ColumnPattern, ...],
           start_cols: tuple[ColumnPattern, ...], divisor: int,
           state_cap: int) -> Automaton:
    states: dict[State, int] = {}
    edges: dict[tuple[int, int], int] = {}
    order: list[State] = []

    def intern(state: State) -> int:
        idx = states.get(state)
        if idx is None:
            if len(order) >= state_cap:
                raise StateExplosionError(
                    f"more than {state_cap} states for m={m} mode={mode}"
                )
            idx = len(order)
            states[state] = idx
            order.append(state)
        return idx

    frontier = [intern(start_state(col)) for col in start_cols]
    start_set = set(frontier)
    seen = set(frontier)
    while frontier:
        nxt_frontier = []
        for src in frontier:
            for col in alphabet:
                dst_state = step_state(order[src], col)
                if dst_state is None:
                    continue
                dst = intern(dst_state)
                edges[(src, col.encode())] = dst
                if dst not in seen:
                    seen.add(dst)
                    nxt_frontier.append(dst)
        frontier = nxt_frontier

    accepts = [acceptance(state) for state in order]

    # trim states that cannot reach any accepting state
    reverse: dict[int, set[int]] = {i: set() for i in range(len(order))}
    for (src, _), dst in edges.items():
        reverse[dst].add(src)
    useful = {i for i, (even, odd) in enumerate(accepts) if even or odd}
    stack = list(useful)
    while stack:
        node = stack.pop()
        for prev in reverse[node]:
            if prev not in useful:
                useful.add(prev)
                stack.append(prev)

    kept = sorted(useful, key=lambda i: order[i].sort_key())
    remap = {old: new for new, old in enumerate(kept)}
    final_states = tuple(order[i] for i in kept)
    transitions = tuple(
        sorted(
            (remap[src], sym, remap[dst])
            for (src, sym), dst in edges.items()
            if src in useful and dst in useful
        )
    )
    return Automaton(
        m=m,
        mode=mode,
        divisor=divisor,
        alphabet=alphabet,
        states=final_states,
        start=tuple(sorted(remap[i] for i in start_set if i in useful)),
        transitions=transitions,
        accept_even=tuple(i for i, s in enumerate(final_states) if acceptance(s)[0]),
        accept_odd=tuple(i for i, s in enumerate(final_states) if acceptance(s)[1]),
    )


def build_canonical(m: int = 4, *, state_cap: int = DEFAULT_STATE_CAP) -> Automaton:
    """The canonical-convention machine; derived and validated for m = 4.

    Alphabet: the 2^(m-1) columns with bottom cell 0 (stipulation 1).  Start
    columns: all-zero, single 1 on top, two 1s on top - the only first
    columns a canonical board can have (any other splits one label's cells
    so that reconnecting them would force the two 4-connected pieces to
    cross).
    """
    if m != 4:
        raise ValueError("the canonical machine is defined for m=4")
    alphabet = tuple(
        ColumnPattern.decode(m, v) for v in range(1 << m) if not (v >> (m - 1)) & 1
    )
    starts = tuple(ColumnPattern(bits) for bits in CANONICAL_START_BITS)
    return _build(m, "canonical", alphabet, starts, 1, state_cap)


def build_general(m: int, *, state_cap: int = DEFAULT_STATE_CAP) -> Automaton:
    """The unrestricted machine for m-row boards; every cut is read twice."""
    if not 1 <= m <= 5:
        raise ValueError("general machines are supported for m in 1..5")
    alphabet = tuple(ColumnPattern.decode(m, v) for v in range(1 << m))
    return _build(m, "general", alphabet, alphabet, 2, state_cap)


def accepted_words(a: Automaton, length: int, parity: str) -> list[tuple[ColumnPattern, ...]]:
    """All accepted words of the given length ('even' or 'odd' width)."""
    if parity not in ("even", "odd"):
        raise ValueError("parity must be 'even' or 'odd'")
    accept = set(a.accept_even if parity == "even" else a.accept_odd)
    start_states = {a.states[i]: i for i in a.start}
    out: list[tuple[ColumnPattern, ...]] = []
    edge_map = a._edge_map

    def extend(idx: int, word: tuple[ColumnPattern, ...]) -> None:
        if len(word) == length:
            if idx in accept:
                out.append(word)
            return
        for col in a.alphabet:
            dst = edge_map.get((idx, col.encode()))
            if dst is not None:
                extend(dst, word + (col,))

    for col in a.alphabet:
        state = start_state(col)
        if state in start_states:
            extend(start_states[state], (col,))
    out.sort(key=lambda w: tuple(c.encode() for c in w))
    return out


# -- transfer matrix ---------------------------------------------------------


@dataclass(frozen=True)
class TransferMatrix:
    """0/1 adjacency of the machine plus start and accept indicator vectors."""

    entries: tuple[tuple[int, ...], ...]
    start_vector: tuple[int, ...]
    accept_even_vector: tuple[int, ...]
    accept_odd_vector: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.entries)


def transfer_matrix(a: Automaton) -> TransferMatrix:
    size = len(a.states)
    rows = [[0] * size for _ in range(size)]
    for src, _, dst in a.transitions:
        rows[src][dst] = 1
    def indicator(idxs: Sequence[int]) -> tuple[int, ...]:
        vec = [0] * size
        for i in idxs:
            vec[i] = 1
        return tuple(vec)
    return TransferMatrix(
        entries=tuple(tuple(row) for row in rows),
        start_vector=indicator(a.start),
        accept_even_vector=indicator(a.accept_even),
        accept_odd_vector=indicator(a.accept_odd),
    )


def permutation_similarity_witness(
    ours: Sequence[Sequence[int]], reference: Sequence[Sequence[int]]
) -> list[int] | None:
    """A permutation p with reference[p[i]][p[j]] == ours[i][j], or None.

    Backtracking over candidate images, pruned by (out-degree, in-degree,
    self-loop) signatures and partial-row consistency; fine for order ~9.
    """
    size = len(ours)
    if len(reference) != size:
        return None

    def signature(mat, i):
        return (sum(mat[i]), sum(row[i] for row in mat), mat[i][i])

    ours_sig = [signature(ours, i) for i in range(size)]
    ref_sig = [signature(reference, i) for i in range(size)]
    candidates = [
        [j for j in range(size) if ref_sig[j] == ours_sig[i]] for i in range(size)
    ]
    perm: list[int] = []
    used = [False] * size

    def place(i: int) -> bool:
        if i == size:
            return True
        for j in candidates[i]:
            if used[j]:
                continue
            if any(
                reference[perm[k]][j] != ours[k][i] or reference[j][perm[k]] != ours[i][k]
                for k in range(i)
            ):
                continue
            if reference[j][j] != ours[i][i]:
                continue
            used[j] = True
            perm.append(j)
            if place(i + 1):
                return True
            perm.pop()
            used[j] = False
        return False

    return perm if place(0) else None


def always_rejected_columns(a: Automaton) -> dict[ColumnPattern, dict]:
    """Columns whose every state accepts nothing, with their liveness facts.

    Such a column can occur inside accepted words (its states survive
    trimming exactly when they lie on accepting paths) but a word may never
    *stop* on it.
    """
    by_col: dict[ColumnPattern, list[int]] = {}
    for idx, state in enumerate(a.states):
        by_col.setdefault(state.column, []).append(idx)
    accepting = set(a.accept_even) | set(a.accept_odd)
    out = {}
    for col, idxs in by_col.items():
        if any(i in accepting for i in idxs):
            continue
        out[col] = {
            "states": len(idxs),
            "reachable": True,  # trimmed machines only contain reachable states
            "on_accepting_path": True,  # and only states that can still accept
        }
    return out


# -- serialization ------------------------------------------------------------


def to_json_dict(a: Automaton) -> dict:
    return {
        "m": a.m,
        "mode": a.mode,
        "divisor": a.divisor,
        "alphabet": [list(c.bits) for c in a.alphabet],
        "states": [
            {
                "column": list(s.column.bits),
                "profile": {
                    "zero": [list(b) for b in s.profile.zero_blocks],
                    "one": [list(b) for b in s.profile.one_blocks],
                },
            }
            for s in a.states
        ],
        "start": list(a.start),
        "edges": [list(edge) for edge in a.transitions],
        "accept_even": list(a.accept_even),
        "accept_odd": list(a.accept_odd),
    }


def to_json(a: Automaton) -> str:
    return json.dumps(to_json_dict(a), indent=2)


def automaton_from_json(text: str) -> Automaton:
    data = json.loads(text)
    states = tuple(
        State(
            ColumnPattern(tuple(s["column"])),
            ConnectivityProfile(
                tuple(tuple(b) for b in s["profile"]["zero"]),
                tuple(tuple(b) for b in s["profile"]["one"]),
            ),
        )
        for s in data["states"]
    )
    return Automaton(
        m=data["m"],
        mode=data["mode"],
        divisor=data["divisor"],
        alphabet=tuple(ColumnPattern(tuple(bits)) for bits in data["alphabet"]),
        states=states,
        start=tuple(data["start"]),
        transitions=tuple(tuple(edge) for edge in data["edges"]),
        accept_even=tuple(data["accept_even"]),
        accept_odd=tuple(data["accept_odd"]),
    )


def to_dot(a: Automaton) -> str:
    """Graphviz rendering: rectangles start, green always-accepts, purple
    accepts on even widths only.  Metadata comments keep it loadable."""
    alphabet = ",".join(str(c) for c in a.alphabet)
    lines = [
        "digraph cuts {",
        f"  // mode={a.mode} m={a.m} divisor={a.divisor}",
        f"  // alphabet={alphabet}",
        "  rankdir=LR;",
        '  node [style=filled, fillcolor=white, fontname="monospace"];',
    ]
    even, odd = set(a.accept_even), set(a.accept_odd)
    for idx, state in enumerate(a.states):
        shape = "box" if idx in a.start else "ellipse"
        if idx in even and idx in odd:
            fill = "palegreen"
        elif idx in even:
            fill = "plum"
        elif idx in odd:
            fill = "khaki"
        else:
            fill = "white"
        profile = ";".join(
            "".join(map(str, b)) for b in state.profile.zero_blocks + state.profile.one_blocks
        )
        label = f"{state.column}\\n[{profile}]"
        lines.append(f'  s{idx} [label="{label}", shape={shape}, fillcolor={fill}];')
    for src, sym, dst in a.transitions:
        sym_col = ColumnPattern.decode(a.m, sym)
        lines.append(f'  s{src} -> s{dst} [label="{sym_col}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


_DOT_META_RE = re.compile(r"//\s*mode=(\w+)\s+m=(\d+)\s+divisor=(\d+)")
_DOT_ALPHABET_RE = re.compile(r"//\s*alphabet=([01,]+)")
_DOT_NODE_RE = re.compile(
    r's(\d+) \[label="([01]+)\\n\[([0-9;]*)\]", shape=(\w+), fillcolor=(\w+)\]'
)
_DOT_EDGE_RE = re.compile(r's(\d+) -> s(\d+) \[label="([01]+)"\]')


def automaton_from_dot(text: str) -> Automaton:
    """Rebuild a machine from DOT produced by to_dot."""
    meta = _DOT_META_RE.search(text)
    alpha = _DOT_ALPHABET_RE.search(text)
    if meta is None or alpha is None:
        raise ValueError("not a machine rendering produced by to_dot")
    mode, m, divisor = meta.group(1), int(meta.group(2)), int(meta.group(3))
    alphabet = tuple(
        ColumnPattern(tuple(int(b) for b in word)) for word in alpha.group(1).split(",")
    )

    states: dict[int, State] = {}
    start, accept_even, accept_odd = [], [], []
    for idx_str, col_str, profile_str, shape, fill in _DOT_NODE_RE.findall(text):
        idx = int(idx_str)
        col = ColumnPattern(tuple(int(b) for b in col_str))
        blocks = [tuple(int(ch) for ch in part) for part in profile_str.split(";") if part]
        labelled = [(col.bits[rows[0]], rows) for rows in blocks]
        states[idx] = State(col, _profile_from_blocks(labelled))
        if shape == "box":
            start.append(idx)
        if fill in ("palegreen", "plum"):
            accept_even.append(idx)
        if fill in ("palegreen", "khaki"):
            accept_odd.append(idx)

    transitions = tuple(
        sorted(
            (int(src), ColumnPattern(tuple(int(b) for b in sym)).encode(), int(dst))
            for src, dst, sym in _DOT_EDGE_RE.findall(text)
        )
    )
    ordered = tuple(states[i] for i in range(len(states)))
    return Automaton(
        m=m,
        mode=mode,
        divisor=divisor,
        alphabet=alphabet,
        states=ordered,
        start=tuple(sorted(start)),
        transitions=transitions,
        accept_even=tuple(sorted(accept_even)),
        accept_odd=tuple(sorted(accept_odd)),
    )
