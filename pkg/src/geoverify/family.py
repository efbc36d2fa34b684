"""Two-child probability puzzles by exhaustive enumeration.

Children are drawn independently and uniformly from a finite list of
types; probabilities come out as exact rationals over the |types|^2
ordered pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Hashable

ChildType = Hashable

WEEKDAYS = ("Mon", "Tue", "Wed", "Thu", "Fri", "Sat", "Sun")


class UndefinedConditionalError(ValueError):
    """Raised when the conditioning event has probability zero."""


@dataclass(frozen=True)
class ChildTypeSpace:
    """Equally likely child types with a distinguished boy type."""

    types: tuple[ChildType, ...]
    boy_types: frozenset[ChildType]
    distinguished: ChildType

    def __post_init__(self):
        if len(set(self.types)) != len(self.types):
            raise ValueError("child types must be distinct")
        if not self.boy_types <= set(self.types):
            raise ValueError("boy types must be a subset of all types")
        if self.distinguished not in self.boy_types:
            raise ValueError("distinguished type must be a boy type")


def plain_space() -> ChildTypeSpace:
    return ChildTypeSpace(types=("B", "G"), boy_types=frozenset({"B"}), distinguished="B")


def weekday_space(distinguished_day: str = "Fri") -> ChildTypeSpace:
    types = tuple((s, d) for s in ("B", "G") for d in WEEKDAYS)
    return ChildTypeSpace(
        types=types,
        boy_types=frozenset(t for t in types if t[0] == "B"),
        distinguished=("B", distinguished_day),
    )


def weekday_hour_space(distinguished_day: str = "Fri", distinguished_hour: int = 18) -> ChildTypeSpace:
    types = tuple((s, d, h) for s in ("B", "G") for d in WEEKDAYS for h in range(24))
    return ChildTypeSpace(
        types=types,
        boy_types=frozenset(t for t in types if t[0] == "B"),
        distinguished=("B", distinguished_day, distinguished_hour),
    )


def family_probability(space: ChildTypeSpace, condition: str) -> Fraction:
    """Probability that both children are boys, given the condition.

    condition "one-is-distinguished": at least one child has the
    distinguished type.  condition "first-is-boy": the first child is a
    boy.  Enumerates all ordered pairs; exact.
    """
    if condition == "one-is-distinguished":
        keep = lambda a, b: a == space.distinguished or b == space.distinguished
    elif condition == "first-is-boy":
        keep = lambda a, b: a in space.boy_types
    else:
        raise ValueError(f"unknown condition {condition!r}")

    conditioned = 0
    both_boys = 0
    for a, b in product(space.types, repeat=2):
        if not keep(a, b):
            continue
        conditioned += 1
        if a in space.boy_types and b in space.boy_types:
            both_boys += 1
    if conditioned == 0:
        raise UndefinedConditionalError("conditioning event is empty")
    return Fraction(both_boys, conditioned)
