"""Finite projective planes and matching-card decks built from them.

A plane of prime order q has q^2 + q + 1 points and as many lines, with
q + 1 points per line; reading lines as cards and points as symbols gives
a deck where any two cards share exactly one symbol.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations

from .core import HomogeneousTriple


class UnsupportedOrderError(ValueError):
    """Raised for plane orders that are not prime."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FinitePlane:
    """Projective plane over the prime field F_q.

    Points and lines are both normalized homogeneous triples; point p lies
    on line l iff p . l == 0 (mod q).
    """

    q: int
    points: tuple[HomogeneousTriple, ...]
    lines: tuple[HomogeneousTriple, ...]

    def incident(self, point: HomogeneousTriple, line: HomogeneousTriple) -> bool:
        s = sum(a * b for a, b in zip(point.coords, line.coords))
        return s % self.q == 0

    def points_on_line(self, line: HomogeneousTriple) -> list[HomogeneousTriple]:
        return [p for p in self.points if self.incident(p, line)]

    def lines_through_point(self, point: HomogeneousTriple) -> list[HomogeneousTriple]:
        return [l for l in self.lines if self.incident(point, l)]


def build_plane(q: int) -> FinitePlane:
    """Construct the projective plane of prime order q.

    Prime powers would need extension-field arithmetic and are rejected.
    """
    if not is_prime(q):
        raise UnsupportedOrderError(f"order {q} is not prime")
    triples = (
        [(1, a, b) for a in range(q) for b in range(q)]
        + [(0, 1, b) for b in range(q)]
        + [(0, 0, 1)]
    )
    points = tuple(HomogeneousTriple(t, modulus=q) for t in triples)
    lines = tuple(HomogeneousTriple(t, modulus=q) for t in triples)
    assert len(points) == q * q + q + 1
    return FinitePlane(q=q, points=points, lines=lines)


@dataclass(frozen=True)
class Deck:
    """Cards as sets of symbol ids; any two cards share exactly one symbol."""

    cards: tuple[frozenset[int], ...]
    symbol_names: dict[int, str] | None = None


@dataclass(frozen=True)
class DeckReport:
    n_cards: int
    card_sizes: tuple[int, ...]
    uniform_size: bool
    shared_histogram: dict  # shared-symbol count -> number of card pairs
    bad_pairs: tuple[tuple[int, int, int], ...]  # (card i, card j, shared count)
    n_pairs: int

    @property
    def valid(self) -> bool:
        return self.uniform_size and not self.bad_pairs


def deck_from_plane(plane: FinitePlane) -> Deck:
    """One card per line, symbols are the ids of its incident points."""
    index = {p: i for i, p in enumerate(plane.points)}
    cards = tuple(
        frozenset(index[p] for p in plane.points_on_line(line)) for line in plane.lines
    )
    return Deck(cards=cards)


def validate_deck(deck: Deck) -> DeckReport:
    """Check card-size uniformity and the one-shared-symbol rule for every
    pair; a deck is valid iff all pairs share exactly one symbol."""
    sizes = tuple(len(c) for c in deck.cards)
    uniform = len(set(sizes)) <= 1
    bad = []
    histogram: dict[int, int] = {}
    n_pairs = 0
    for (i, a), (j, b) in combinations(enumerate(deck.cards), 2):
        n_pairs += 1
        shared = len(a & b)
        histogram[shared] = histogram.get(shared, 0) + 1
        if shared != 1:
            bad.append((i, j, shared))
    return DeckReport(
        n_cards=len(deck.cards),
        card_sizes=sizes,
        uniform_size=uniform,
        shared_histogram=histogram,
        bad_pairs=tuple(bad),
        n_pairs=n_pairs,
    )


def deck_to_json(deck: Deck) -> str:
    payload: dict = {"cards": [sorted(c) for c in deck.cards]}
    if deck.symbol_names is not None:
        payload["symbol_names"] = {str(k): v for k, v in deck.symbol_names.items()}
    return json.dumps(payload, sort_keys=True)


def deck_from_json(text: str) -> Deck:
    payload = json.loads(text)
    cards = tuple(frozenset(int(s) for s in card) for card in payload["cards"])
    names = payload.get("symbol_names")
    if names is not None:
        names = {int(k): str(v) for k, v in names.items()}
    return Deck(cards=cards, symbol_names=names)
