import pytest

from gridcuts import oracle
from gridcuts.automaton import (
    acceptance,
    accepted_words,
    always_rejected_columns,
    automaton_from_json,
    build_canonical,
    build_general,
    permutation_similarity_witness,
    start_state,
    step_state,
    to_dot,
    to_json,
    transfer_matrix,
    StateExplosionError,
)
from gridcuts.board import ColumnPattern, complete_board, is_canonical, is_graham
from gridcuts.reference import REFERENCE_TRANSFER_MATRIX


def col(*bits):
    return ColumnPattern(tuple(bits))


@pytest.fixture(scope="module")
def canonical():
    return build_canonical(4)


class TestStep:
    def test_trivial_edge_keeps_connectivity(self):
        state = step_state(start_state(col(1, 1, 0, 0)), col(1, 1, 0, 0))
        assert state is not None
        assert state.profile.one_blocks == ((0, 1),)
        assert state.profile.zero_blocks == ((2, 3),)

    def test_disconnecting_edge_rejected(self):
        # the single 1-block loses its whole frontier
        assert step_state(start_state(col(1, 1, 0, 0)), col(0, 0, 1, 0)) is None

    def test_new_component_spawns(self):
        state = step_state(start_state(col(1, 0, 0, 0)), col(1, 0, 1, 0))
        assert state is not None
        # 1s split into the old top block and a fresh one; 0s joined up
        assert state.profile.one_blocks == ((0,), (2,))
        assert state.profile.zero_blocks == ((1, 3),)

    def test_symbol_outside_alphabet(self, canonical):
        state = canonical.states[canonical.start[0]]
        with pytest.raises(ValueError):
            canonical.step(state, col(0, 0, 0, 1))


class TestAcceptance:
    def test_odd_accepting_columns(self, canonical):
        odd_cols = {canonical.states[i].column.bits for i in canonical.accept_odd}
        assert odd_cols == {(1, 1, 0, 0), (1, 0, 1, 0)}

    def test_all_zero_start_even_accepts(self):
        even, odd = acceptance(start_state(col(0, 0, 0, 0)))
        assert even and not odd
        assert is_graham(complete_board([col(0, 0, 0, 0)], 2))

    def test_acceptance_needs_live_columns_to_line_up(self, canonical):
        lonely = [s for s in canonical.states if s.column.bits == (0, 1, 1, 0)]
        assert [acceptance(s) for s in lonely] == [(False, False)]


class TestCanonicalStructure:
    def test_nine_states(self, canonical):
        assert len(canonical.states) == 9

    def test_two_states_share_the_split_column(self, canonical):
        split = [s for s in canonical.states if s.column.bits == (1, 0, 1, 0)]
        assert len(split) == 2
        profiles = {(s.profile.zero_blocks, s.profile.one_blocks) for s in split}
        assert profiles == {
            (((1,), (3,)), ((0, 2),)),  # 1s connected, 0s split
            (((1, 3),), ((0,), (2,))),  # 0s connected, 1s split
        }

    def test_every_other_column_has_one_state(self, canonical):
        seen = {}
        for state in canonical.states:
            seen[state.column.bits] = seen.get(state.column.bits, 0) + 1
        assert all(v == 1 for bits, v in seen.items() if bits != (1, 0, 1, 0))

    def test_start_columns(self, canonical):
        starts = {canonical.states[i].column.bits for i in canonical.start}
        assert starts == {(0, 0, 0, 0), (1, 0, 0, 0), (1, 1, 0, 0)}

    def test_alphabet_is_bottom_zero_columns(self, canonical):
        assert len(canonical.alphabet) == 8
        assert all(c.bits[3] == 0 for c in canonical.alphabet)

    def test_transfer_matrix_similar_to_reference(self, canonical):
        T = transfer_matrix(canonical)
        witness = permutation_similarity_witness(T.entries, REFERENCE_TRANSFER_MATRIX)
        assert witness is not None
        size = len(witness)
        for i in range(size):
            for j in range(size):
                assert REFERENCE_TRANSFER_MATRIX[witness[i]][witness[j]] == T.entries[i][j]

    def test_charpolys_agree(self, canonical):
        from gridcuts.series import charpoly

        ours = charpoly(transfer_matrix(canonical).entries)
        assert ours == charpoly(REFERENCE_TRANSFER_MATRIX)

    def test_counts_match_reference_terms(self, canonical):
        from gridcuts.reference import REFERENCE_TERMS

        assert [canonical.count_boards(n) for n in range(1, 13)] == list(REFERENCE_TERMS[:12])

    def test_count_zero_width(self, canonical):
        assert canonical.count_boards(0) == 0


class TestLonelyColumn:
    """One column may appear inside accepted words but never end one.

    Witness: the word 0000,0110,0100 is live, ends even-accepting after one
    more column, and its width-6 completion (below) is a stipulation-valid
    cut that contains the column (0,1,1,0) in its left half.  So the column's
    state survives trimming; 'always rejected' is about words stopping there.
    """

    WITNESS = (col(0, 0, 0, 0), col(0, 1, 1, 0), col(0, 1, 0, 0))

    def test_witness_board_is_canonical(self):
        board = complete_board(list(self.WITNESS), 6)
        assert is_canonical(board)
        assert board.cells == (
            (0, 0, 0, 1, 1, 1),
            (0, 1, 1, 1, 0, 1),
            (0, 1, 0, 0, 0, 1),
            (0, 0, 0, 1, 1, 1),
        )

    def test_machine_accepts_the_witness(self, canonical):
        assert canonical.accepts(self.WITNESS, 6)

    def test_witness_in_enumeration(self):
        board = complete_board(list(self.WITNESS), 6)
        assert board.cells in {b.cells for b in oracle.enumerate_canonical(4, 6)}

    def test_lonely_column_state_accepts_nothing(self, canonical):
        report = always_rejected_columns(canonical)
        assert [c.bits for c in report] == [(0, 1, 1, 0)]

    def test_no_word_ends_on_the_lonely_column(self, canonical):
        for k in (1, 2, 3):
            for parity in ("even", "odd"):
                for word in accepted_words(canonical, k, parity):
                    assert word[-1].bits != (0, 1, 1, 0)


class TestGeneralMachines:
    @pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
    def test_build(self, m):
        machine = build_general(m)
        assert machine.divisor == 2
        assert len(machine.alphabet) == 1 << m

    def test_m1_counts(self):
        machine = build_general(1)
        assert [machine.count_boards(n) for n in range(1, 9)] == [0, 1, 0, 1, 0, 1, 0, 1]

    def test_m3_width_two(self):
        assert build_general(3).count_boards(2) == 3

    @pytest.mark.parametrize("m", [2, 3, 4, 5])
    def test_counts_match_oracle_cuts(self, m):
        machine = build_general(m)
        for n in range(1, 9):
            assert machine.count_boards(n) == oracle.count_report(m, n).cuts

    def test_five_row_counts(self):
        machine = build_general(5)
        assert [machine.count_boards(n) for n in range(1, 9)] == [
            0, 5, 0, 39, 0, 263, 0, 1675,
        ]

    def test_row_count_range(self):
        with pytest.raises(ValueError):
            build_general(6)

    def test_state_cap(self):
        with pytest.raises(StateExplosionError):
            build_general(4, state_cap=5)


class TestWordRuns:
    def test_run_rejects_bad_start(self, canonical):
        assert canonical.run([col(0, 1, 1, 0)]) is None

    def test_run_accept_matches_board(self, canonical):
        word = (col(0, 0, 0, 0), col(0, 1, 0, 0), col(0, 1, 0, 0))
        assert canonical.accepts(word, 6)
        assert is_canonical(complete_board(word, 6))

    def test_accepts_wrong_width(self, canonical):
        assert not canonical.accepts((col(0, 0, 0, 0),), 6)

    def test_accepted_words_sorted_deterministically(self, canonical):
        words = accepted_words(canonical, 3, "even")
        keys = [tuple(c.encode() for c in w) for w in words]
        assert keys == sorted(keys)
        assert len(words) == canonical.count_boards(6)


class TestInvariants:
    @pytest.mark.parametrize("build", [lambda: build_canonical(4), lambda: build_general(3)])
    def test_every_state_reachable_from_a_start(self, build):
        machine = build()
        edge_map = {}
        for src, _, dst in machine.transitions:
            edge_map.setdefault(src, set()).add(dst)
        seen = set(machine.start)
        frontier = list(machine.start)
        while frontier:
            node = frontier.pop()
            for nxt in edge_map.get(node, ()):
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
        assert seen == set(range(len(machine.states)))

    @pytest.mark.parametrize("build", [lambda: build_canonical(4), lambda: build_general(4)])
    def test_profiles_partition_the_column(self, build):
        for state in build().states:
            zeros = [i for i, b in enumerate(state.column.bits) if b == 0]
            ones = [i for i, b in enumerate(state.column.bits) if b == 1]
            assert sorted(r for block in state.profile.zero_blocks for r in block) == zeros
            assert sorted(r for block in state.profile.one_blocks for r in block) == ones
            assert not state.profile.dead

    def test_odd_accepting_states_have_self_revcomp_columns(self, canonical):
        from gridcuts.board import is_self_revcomp

        for idx in canonical.accept_odd:
            assert is_self_revcomp(canonical.states[idx].column)


class TestSerializationExports:
    def test_json_round_trip(self, canonical):
        assert automaton_from_json(to_json(canonical)) == canonical

    def test_json_round_trip_general(self):
        machine = build_general(3)
        assert automaton_from_json(to_json(machine)) == machine

    def test_dot_round_trip(self, canonical):
        from gridcuts.automaton import automaton_from_dot

        assert automaton_from_dot(to_dot(canonical)) == canonical

    def test_dot_round_trip_general(self):
        from gridcuts.automaton import automaton_from_dot

        machine = build_general(2)
        assert automaton_from_dot(to_dot(machine)) == machine

    def test_dot_has_nine_nodes_and_three_boxes(self, canonical):
        dot = to_dot(canonical)
        assert dot.count("shape=box") == 3
        nodes = [line for line in dot.splitlines() if "[label=" in line and "->" not in line]
        assert len(nodes) == 9
        assert dot.count("palegreen") == 3  # accept both parities
