from fractions import Fraction as F

import pytest

from exotic_metrics.scalar import as_scalar, fmt, parse_rational


@pytest.mark.parametrize("text,value", [("3/4", F(3, 4)), ("-2/6", F(-1, 3)), (" 5 ", F(5)), ("4/-8", F(-1, 2))])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["", "1/0", "a/b", "0.5", "1//2"])
def test_parse_rational_rejects(text):
    with pytest.raises(ValueError):
        parse_rational(text)


def test_fmt_is_lowest_terms_with_positive_denominator():
    assert fmt(F(2)) == "2/1"
    assert fmt(F(0)) == "0/1"
    assert fmt(F(6, -8)) == "-3/4"


def test_as_scalar_refuses_inexact_values():
    with pytest.raises(TypeError):
        as_scalar(0.5)
    with pytest.raises(TypeError):
        as_scalar(True)
    assert as_scalar("1/3") == F(1, 3)
    assert as_scalar(2) == F(2)
