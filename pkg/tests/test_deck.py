from itertools import combinations

import pytest

from geoverify.deck import (
    Deck,
    UnsupportedOrderError,
    build_plane,
    deck_from_json,
    deck_from_plane,
    deck_to_json,
    is_prime,
    validate_deck,
)


@pytest.mark.parametrize("q,n", [(2, 7), (3, 13), (7, 57)])
def test_plane_cardinalities(q, n):
    plane = build_plane(q)
    assert len(plane.points) == n
    assert len(plane.lines) == n
    for line in plane.lines:
        assert len(plane.points_on_line(line)) == q + 1


def test_non_prime_rejected():
    for q in (1, 4, 6, 8, 9, 12):
        with pytest.raises(UnsupportedOrderError):
            build_plane(q)


def test_is_prime_small():
    primes = [p for p in range(30) if is_prime(p)]
    assert primes == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


@pytest.mark.parametrize("q", [2, 3, 5, 7, 11, 13])
def test_incidence_axioms_exhaustive(q):
    plane = build_plane(q)
    cards = [frozenset(i for i, p in enumerate(plane.points) if plane.incident(p, l)) for l in plane.lines]
    # every line has q+1 points
    assert all(len(c) == q + 1 for c in cards)
    # two distinct lines meet in exactly one point
    for a, b in combinations(cards, 2):
        assert len(a & b) == 1
    # two distinct points lie on exactly one common line (dual count)
    on_lines = [frozenset(j for j, c in enumerate(cards) if i in c) for i in range(len(plane.points))]
    assert all(len(s) == q + 1 for s in on_lines)
    for a, b in combinations(on_lines, 2):
        assert len(a & b) == 1


def test_deck_from_plane_q7():
    deck = deck_from_plane(build_plane(7))
    report = validate_deck(deck)
    assert report.n_cards == 57
    assert report.card_sizes[0] == 8 and report.uniform_size
    assert report.n_pairs == 1596
    assert report.shared_histogram == {1: 1596}
    assert report.valid


def test_deck_subset_stays_valid():
    deck = deck_from_plane(build_plane(7))
    sub = Deck(cards=deck.cards[:55])
    assert validate_deck(sub).valid


@pytest.mark.parametrize("q", [2, 3, 5])
def test_deck_shapes_small(q):
    deck = deck_from_plane(build_plane(q))
    report = validate_deck(deck)
    assert report.n_cards == q * q + q + 1
    assert report.card_sizes[0] == q + 1
    assert report.valid


def test_duplicate_cards_flagged():
    deck = deck_from_plane(build_plane(2))
    doubled = Deck(cards=deck.cards + (deck.cards[0],))
    report = validate_deck(doubled)
    assert not report.valid
    assert any(shared == 3 for _, _, shared in report.bad_pairs)


def test_json_roundtrip():
    deck = deck_from_plane(build_plane(3))
    named = Deck(cards=deck.cards, symbol_names={i: f"symbol{i}" for i in range(13)})
    again = deck_from_json(deck_to_json(named))
    assert again.cards == named.cards
    assert again.symbol_names == named.symbol_names
