from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from geoverify.family import (
    ChildTypeSpace,
    UndefinedConditionalError,
    family_probability,
    plain_space,
    weekday_hour_space,
    weekday_space,
)


def test_boy_friday():
    assert family_probability(weekday_space(), "one-is-distinguished") == Fraction(13, 27)


def test_boy_friday_evening_hour():
    space = weekday_hour_space()
    assert len(space.types) == 336
    assert family_probability(space, "one-is-distinguished") == Fraction(335, 671)


def test_plain_boy():
    assert family_probability(plain_space(), "one-is-distinguished") == Fraction(1, 3)


def test_first_child_conditional():
    for space in (plain_space(), weekday_space(), weekday_hour_space()):
        assert family_probability(space, "first-is-boy") == Fraction(1, 2)


def test_empty_condition_rejected():
    # a space with no types cannot pass validation, so build it raw to
    # exercise the defensive check
    space = object.__new__(ChildTypeSpace)
    object.__setattr__(space, "types", ())
    object.__setattr__(space, "boy_types", frozenset())
    object.__setattr__(space, "distinguished", "B")
    with pytest.raises(UndefinedConditionalError):
        family_probability(space, "first-is-boy")


def test_space_validation():
    with pytest.raises(ValueError):
        ChildTypeSpace(types=("B", "G"), boy_types=frozenset({"X"}), distinguished="X")
    with pytest.raises(ValueError):
        ChildTypeSpace(types=("B", "G"), boy_types=frozenset({"B"}), distinguished="G")


@given(st.integers(min_value=1, max_value=12), st.integers(min_value=0, max_value=12))
def test_closed_form_on_random_spaces(m, extra):
    # m boy types among n = m + extra types; distinguished is boy type 0
    n = m + extra
    types = tuple(range(n))
    space = ChildTypeSpace(
        types=types, boy_types=frozenset(range(m)), distinguished=0
    )
    got = family_probability(space, "one-is-distinguished")
    assert got == Fraction(2 * m - 1, 2 * n - 1)
