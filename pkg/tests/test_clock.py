from fractions import Fraction

from geoverify.clock import ambiguous_clock_times


def test_counts():
    result = ambiguous_clock_times()
    assert result.count_per_half_day == 132
    assert result.count_per_day == 264
    assert len(result.coincidences) == 11


def test_first_nontrivial_pair():
    result = ambiguous_clock_times()
    by_time = dict(result.pairs)
    t = Fraction(12, 143)  # k = 1
    assert by_time[t] == Fraction(144, 143)


def test_pairs_are_involutive_and_realizable():
    result = ambiguous_clock_times()
    by_time = dict(result.pairs)
    for t, partner in result.pairs:
        assert t != partner
        # the swapped reading is itself ambiguous, partnered back to t
        assert by_time[partner] == t
        # both readings realizable: minute hand = 12 * hour hand (mod 12)
        assert partner == (12 * t) % 12
        assert t == (12 * partner) % 12


def test_coincidences_match_eleventh_grid():
    result = ambiguous_clock_times()
    assert set(result.coincidences) == {Fraction(12 * m, 11) for m in range(11)}
    # excluded k are exactly the multiples of 13
    excluded = {Fraction(12 * k, 143) for k in range(143) if k % 13 == 0}
    assert set(result.coincidences) == excluded
