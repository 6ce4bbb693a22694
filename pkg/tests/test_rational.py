from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rads.rational import (
    format_fixed,
    format_rational,
    is_four_decimal,
    is_terminating,
    parse_rational,
)


@pytest.mark.parametrize(
    "text,expected",
    [
        ("0.75", Fraction(3, 4)),
        ("20", Fraction(20)),
        ("2.1875", Fraction(35, 16)),
        ("19/7", Fraction(19, 7)),
        ("-0.5", Fraction(-1, 2)),
        ("0", Fraction(0)),
    ],
)
def test_parse_rational(text, expected):
    assert parse_rational(text) == expected


@pytest.mark.parametrize("bad", ["", "1e5", "0x10", "1.2.3", "7/0", "1/-2", "nan", None, 1.5, True])
def test_parse_rational_rejects(bad):
    with pytest.raises(ValueError):
        parse_rational(bad)


@pytest.mark.parametrize(
    "value,expected",
    [
        (Fraction(3, 4), "0.75"),
        (Fraction(35, 16), "2.1875"),
        (Fraction(65), "65"),
        (Fraction(19, 7), "19/7"),
        (Fraction(-3, 8), "-0.375"),
        (Fraction(1, 10000), "0.0001"),
        (Fraction(0), "0"),
    ],
)
def test_format_rational(value, expected):
    assert format_rational(value) == expected


def test_format_fixed():
    assert format_fixed(Fraction(35, 16)) == "2.1875"
    assert format_fixed(Fraction(35)) == "35.0000"
    assert format_fixed(Fraction(1, 3)) == "0.3333"
    assert format_fixed(Fraction(2, 3)) == "0.6667"
    assert format_fixed(Fraction(-1, 2), 2) == "-0.50"


def test_is_four_decimal():
    assert is_four_decimal(Fraction(3, 4))
    assert is_four_decimal(Fraction(1, 10000))
    assert not is_four_decimal(Fraction(1, 3))
    assert not is_four_decimal(Fraction(1, 100000))


def test_is_terminating():
    assert is_terminating(Fraction(1, 2))
    assert is_terminating(Fraction(7, 40))
    assert not is_terminating(Fraction(19, 7))


@given(st.fractions())
def test_round_trip_exact(value):
    assert parse_rational(format_rational(value)) == value
