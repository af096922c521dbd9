from fractions import Fraction

import pytest
from hypothesis import given

from conftest import money, nonneg_ratio
from envelopes.money import GainDelta, Money, delta, parse_dollars, scale


def test_scale_examples():
    assert scale(Money.dollars("10.00"), Fraction(1, 2)) == Money.dollars("5.00")
    assert scale(Money.dollars("7.37"), 1) == Money.dollars("7.37")
    assert scale(Money.dollars("0.01"), Fraction(5, 4)) == Money(Fraction(5, 4))


def test_delta_examples():
    assert delta(Money.dollars("10.00"), Money.dollars("5.00")) == GainDelta.dollars("-5.00")
    assert delta(Money.dollars("5.00"), Money.dollars("10.00")) == GainDelta.dollars("+5.00")
    assert delta(Money.dollars("3.33"), Money.dollars("3.33")) == GainDelta(Fraction(0))


def test_lowest_terms():
    m = Money(Fraction(10, 4))
    assert (m.numerator, m.denominator) == (5, 2)


def test_negative_money_rejected():
    with pytest.raises(ValueError):
        Money(Fraction(-1))
    with pytest.raises(ValueError):
        scale(Money.dollars("1.00"), Fraction(-1, 2))


def test_floats_rejected():
    with pytest.raises(TypeError):
        Money(0.5)
    with pytest.raises(TypeError):
        scale(Money.dollars("1.00"), 1.25)


@pytest.mark.parametrize("text, cents", [
    ("5.00", 500), ("$7.37", 737), ("12", 1200), ("0.005", Fraction(1, 2)), ("0.1", 10),
])
def test_parse_dollars(text, cents):
    assert parse_dollars(text) == cents


@pytest.mark.parametrize("text", ["", "-1.00", "1e3", "1/2", "1.2.3", "abc"])
def test_parse_dollars_rejects(text):
    with pytest.raises(ValueError):
        parse_dollars(text)


def test_display():
    assert str(Money.dollars("7.50")) == "$7.50"
    assert str(Money.dollars("1234.05")) == "$1234.05"
    assert str(Money(Fraction(5, 4))) == "5/4 cents"
    assert str(GainDelta.dollars("-3.75")) == "-$3.75"
    assert str(GainDelta.dollars("7.50")) == "+$7.50"
    assert str(GainDelta(Fraction(0))) == "$0.00"


def test_json_round_trip():
    m = Money(Fraction(937, 3))
    assert m.to_json() == {"num": "937", "den": "3"}
    assert Money.from_json(m.to_json()) == m
    g = GainDelta(Fraction(-375))
    assert GainDelta.from_json(g.to_json()) == g


def test_big_integers_do_not_overflow():
    m = Money(Fraction(3**200, 7))
    for _ in range(100):
        m = scale(m, Fraction(5, 4))
    assert m.cents == Fraction(3**200 * 5**100, 7 * 4**100)


@given(money, nonneg_ratio, nonneg_ratio)
def test_scale_composes(a, p, q):
    assert scale(scale(a, p), q) == scale(a, p * q)


@given(money, money)
def test_delta_antisymmetric(a, b):
    assert delta(a, b) == -delta(b, a)


@given(money)
def test_double_then_halve(a):
    assert scale(scale(a, 2), Fraction(1, 2)) == a
