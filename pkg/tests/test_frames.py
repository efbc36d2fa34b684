import pytest
from hypothesis import given, strategies as st

from geoverify.frames import (
    EMPTY,
    commutator,
    drop_nail,
    format_word,
    generator,
    nail_word,
    parse_word,
    reduce,
)

letters = st.tuples(st.integers(min_value=1, max_value=5), st.sampled_from([1, -1]))
words = st.lists(letters, max_size=60).map(tuple)


class TestReduce:
    def test_full_cancellation(self):
        assert reduce(parse_word("A B B' A'")) == EMPTY

    def test_commutator_already_reduced(self):
        w = parse_word("A B A' B'")
        assert reduce(w) == w

    def test_partial_cancellation(self):
        assert reduce(parse_word("A A' A")) == parse_word("A")

    @given(words)
    def test_idempotent(self, w):
        once = reduce(w)
        assert reduce(once) == once

    @given(words)
    def test_reduced_has_no_adjacent_inverses(self, w):
        r = reduce(w)
        for (g1, s1), (g2, s2) in zip(r, r[1:]):
            assert not (g1 == g2 and s1 == -s2)

    @given(words)
    def test_word_times_inverse_is_identity(self, w):
        inv = tuple((g, -s) for g, s in reversed(w))
        assert reduce(w + inv) == EMPTY


class TestNailWord:
    def test_two_nails(self):
        assert format_word(nail_word(2)) == "A B A' B'"
        assert len(nail_word(2)) == 4

    def test_three_nails_left_nested(self):
        assert format_word(nail_word(3)) == "A B A' B' C B A B' A' C'"
        assert len(nail_word(3)) == 10

    def test_one_nail(self):
        assert nail_word(1) == generator(1)
        assert nail_word(1, "balanced") == generator(1)

    def test_balanced_four_nails(self):
        w = nail_word(4, "balanced")
        ab = commutator(generator(1), generator(2))
        cd = commutator(generator(3), generator(4))
        assert w == commutator(ab, cd)

    @pytest.mark.parametrize("n", range(1, 8))
    def test_left_nested_length_law(self, n):
        assert len(nail_word(n)) == 3 * 2 ** (n - 1) - 2

    def test_length_recurrence(self):
        lengths = [len(nail_word(n)) for n in range(1, 8)]
        for prev, cur in zip(lengths, lengths[1:]):
            assert cur == 2 * prev + 2

    def test_unknown_scheme(self):
        with pytest.raises(ValueError):
            nail_word(3, "spiral")


class TestDropNail:
    def test_drop_from_commutator(self):
        assert drop_nail(nail_word(2), 1) == EMPTY
        assert drop_nail(nail_word(2), 2) == EMPTY

    def test_drop_c_from_triple(self):
        assert drop_nail(nail_word(3), 3) == EMPTY

    def test_drop_absent_generator(self):
        assert drop_nail(parse_word("A"), 2) == parse_word("A")

    @pytest.mark.parametrize("scheme", ["left-nested", "balanced"])
    @pytest.mark.parametrize("n", range(1, 7))
    def test_frame_falls_for_every_nail(self, n, scheme):
        w = nail_word(n, scheme)
        assert w != EMPTY
        for i in range(1, n + 1):
            assert drop_nail(w, i) == EMPTY

    @pytest.mark.parametrize("scheme", ["left-nested", "balanced"])
    def test_dropping_two_nails_worth_is_harmless_check(self, scheme):
        # sanity: deleting a generator not in the word leaves it alone
        w = nail_word(3, scheme)
        assert drop_nail(w, 9) == w


class TestStringFormat:
    def test_roundtrip(self):
        w = nail_word(4, "balanced")
        assert parse_word(format_word(w)) == w

    def test_parse_without_spaces(self):
        assert parse_word("AB'A'B") == ((1, 1), (2, -1), (1, -1), (2, 1))

    def test_bad_character(self):
        with pytest.raises(ValueError):
            parse_word("A b")
