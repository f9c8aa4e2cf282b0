import json

import pytest

from gridcuts.board import (
    Board,
    ColumnPattern,
    CanonicalConventionWarning,
    Cut,
    boards_to_svg,
    complete_board,
    component_counts,
    is_canonical,
    is_graham,
    is_self_revcomp,
    revcomp,
    satisfies_complement_rule,
    transform,
)
from gridcuts.reference import GALLERY_3X6, GALLERY_4X6


def col(*bits):
    return ColumnPattern(tuple(bits))


class TestColumnPattern:
    def test_encode_decode_roundtrip(self):
        for m in range(1, 9):
            for value in range(1 << m):
                assert ColumnPattern.decode(m, value).encode() == value

    def test_encoding_is_top_first(self):
        assert col(1, 0, 0, 0).encode() == 1
        assert col(0, 0, 0, 1).encode() == 8

    def test_rejects_bad_bits(self):
        with pytest.raises(ValueError):
            ColumnPattern((0, 2))
        with pytest.raises(ValueError):
            ColumnPattern(())

    def test_revcomp_fixed_point(self):
        assert revcomp(col(1, 1, 0, 0)) == col(1, 1, 0, 0)

    def test_revcomp_all_zeros(self):
        assert revcomp(col(0, 0, 0, 0)) == col(1, 1, 1, 1)

    def test_revcomp_formula(self):
        assert revcomp(col(0, 0, 0, 1)) == col(0, 1, 1, 1)

    def test_self_revcomp_columns_m4(self):
        fixed = [c for v in range(16) if is_self_revcomp(c := ColumnPattern.decode(4, v))]
        assert {f.bits for f in fixed} == {
            (1, 1, 0, 0), (0, 0, 1, 1), (1, 0, 1, 0), (0, 1, 0, 1),
        }


class TestCompleteBoard:
    def test_width_two(self):
        board = complete_board([col(0, 0, 0, 0)], 2)
        assert board.columns() == (col(0, 0, 0, 0), col(1, 1, 1, 1))

    def test_width_one_middle_fixed(self):
        board = complete_board([col(1, 1, 0, 0)], 1)
        assert board.columns() == (col(1, 1, 0, 0),)

    def test_gallery_board_from_left_half(self):
        left = [col(0, 0, 0, 0), col(0, 1, 0, 0), col(0, 1, 0, 0)]
        board = complete_board(left, 6)
        assert board == GALLERY_4X6[11]
        assert board.cells == (
            (0, 0, 0, 1, 1, 1),
            (0, 1, 1, 1, 1, 1),
            (0, 0, 0, 0, 0, 1),
            (0, 0, 0, 1, 1, 1),
        )

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            complete_board([col(0, 0, 0, 0)], 4)

    def test_odd_middle_must_be_self_revcomp(self):
        with pytest.raises(ValueError):
            complete_board([col(0, 0, 0, 0)], 1)

    def test_left_half_round_trip(self):
        for board in GALLERY_4X6:
            assert complete_board(board.left_half(), board.n) == board

    def test_result_satisfies_rule(self):
        for board in GALLERY_4X6:
            assert satisfies_complement_rule(board)


class TestComponents:
    def test_straight_cut_gallery_board(self):
        assert component_counts(GALLERY_4X6[9]) == (1, 1)

    def test_alternating_column(self):
        board = Board.from_columns([col(0, 1, 0, 1)])
        assert component_counts(board) == (2, 2)

    def test_two_alternating_columns(self):
        board = Board.from_columns([col(0, 1, 0, 1), col(0, 1, 0, 1)])
        assert component_counts(board) == (2, 2)

    def test_single_cell(self):
        assert component_counts(Board.from_rows([[1]])) == (0, 1)


class TestIsGraham:
    @pytest.mark.parametrize("idx", range(12))
    def test_gallery_4x6(self, idx):
        assert is_graham(GALLERY_4X6[idx])

    @pytest.mark.parametrize("idx", range(12))
    def test_gallery_3x6(self, idx):
        assert is_graham(GALLERY_3X6[idx])

    def test_complement_preserves_validity(self):
        for board in GALLERY_4X6:
            assert is_graham(transform(board, "complement"))

    def test_split_ones_rejected(self):
        board = Board.from_columns([col(0, 1, 1, 0), col(1, 0, 0, 1)])
        assert satisfies_complement_rule(board)
        assert not is_graham(board)

    def test_odd_cell_count_never_valid(self):
        board = Board.from_rows([[0, 1, 0], [1, 0, 1], [0, 1, 0]])
        assert not is_graham(board)


class TestTransforms:
    def test_rot180_equals_complement_on_valid_boards(self):
        for board in GALLERY_4X6 + GALLERY_3X6:
            assert transform(board, "rot180") == transform(board, "complement")

    def test_hflip_maps_gallery_board_to_gallery_board(self):
        assert transform(GALLERY_3X6[0], "hflip") == GALLERY_3X6[7]

    def test_vflip_is_rot180_of_hflip(self):
        for board in GALLERY_4X6:
            assert transform(board, "vflip") == transform(transform(board, "hflip"), "rot180")

    @pytest.mark.parametrize("op", ["hflip", "vflip", "rot180", "complement"])
    def test_involutions(self, op):
        for board in GALLERY_4X6:
            assert transform(transform(board, op), op) == board

    def test_transforms_preserve_validity(self):
        for board in GALLERY_4X6:
            for op in ("hflip", "vflip", "rot180", "complement"):
                assert is_graham(transform(board, op))

    def test_unknown_op(self):
        with pytest.raises(ValueError):
            transform(GALLERY_4X6[0], "transpose")


class TestIsCanonical:
    @pytest.mark.parametrize("idx", range(12))
    def test_gallery_4x6_all_canonical(self, idx):
        assert is_canonical(GALLERY_4X6[idx])

    def test_bottom_left_one_rejected(self):
        board = Board.from_columns([col(0, 0, 0, 1), col(0, 1, 1, 1)])
        assert not is_canonical(board)

    def test_complement_of_straight_cut_not_canonical(self):
        board = transform(complete_board([col(0, 0, 0, 0)], 2), "complement")
        assert not is_canonical(board)

    def test_first_column_zero_majority(self):
        board = complete_board([col(1, 1, 1, 0)], 2)
        assert is_graham(board)
        assert not is_canonical(board)

    def test_other_row_counts_warn(self):
        with pytest.warns(CanonicalConventionWarning):
            is_canonical(GALLERY_3X6[0])


class TestCut:
    def test_complement_gives_same_cut(self):
        for board in GALLERY_4X6:
            assert Cut.from_board(board) == Cut.from_board(transform(board, "complement"))

    def test_distinct_cuts_differ(self):
        assert Cut.from_board(GALLERY_4X6[0]) != Cut.from_board(GALLERY_4X6[1])

    def test_boards_property(self):
        cut = Cut.from_board(GALLERY_4X6[0])
        rep, other = cut.boards
        assert transform(rep, "complement") == other
        assert rep.cells <= other.cells


class TestSerialization:
    def test_json_round_trip(self):
        board = GALLERY_4X6[3]
        assert Board.from_json(board.to_json()) == board
        data = board.to_json_dict()
        assert data["m"] == 4 and data["n"] == 6
        assert json.loads(board.to_json()) == data

    def test_ascii_round_trip(self):
        board = GALLERY_4X6[4]
        text = board.to_ascii()
        assert set(text) <= {"#", ".", "\n"}
        assert Board.from_ascii(text) == board

    def test_svg_round_trip(self):
        board = GALLERY_3X6[2]
        assert Board.from_svg(board.to_svg()) == board

    def test_multi_board_svg_round_trip(self):
        from gridcuts.board import boards_from_svg

        boards = list(GALLERY_4X6[:3])
        text = boards_to_svg(boards)
        assert boards_from_svg(text) == boards

    def test_bad_ascii(self):
        with pytest.raises(ValueError):
            Board.from_ascii("##\n#x")
