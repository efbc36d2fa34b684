"""Ambiguous readings of a clock whose hands have equal length.

Positions are exact rational hours on [0, 12).  A reading (hour hand at h,
minute hand at m) is realizable iff m == 12 h (mod 12); it is ambiguous if
the swapped reading is also realizable and differs from the original.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class ClockAmbiguity:
    pairs: tuple[tuple[Fraction, Fraction], ...]  # (time, time it is confusable with)
    coincidences: tuple[Fraction, ...]  # hands coincide; readable despite the overlap
    count_per_half_day: int
    count_per_day: int


def ambiguous_clock_times() -> ClockAmbiguity:
    """Enumerate all ambiguous moments in 12 hours, exactly.

    Both readings realizable forces 143 h == 0 (mod 12), i.e. h = 12k/143;
    the k divisible by 13 are the hand coincidences h = 12m/11, which are
    readable and excluded.
    """
    pairs = []
    coincidences = []
    for k in range(143):
        t = Fraction(12 * k, 143)
        partner = Fraction(144 * k, 143) % 12
        if k % 13 == 0:
            assert partner == t
            coincidences.append(t)
        else:
            pairs.append((t, partner))
    return ClockAmbiguity(
        pairs=tuple(pairs),
        coincidences=tuple(coincidences),
        count_per_half_day=len(pairs),
        count_per_day=2 * len(pairs),
    )
