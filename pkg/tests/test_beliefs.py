from fractions import Fraction

import pytest
from hypothesis import given

from conftest import money
from oracles import naive_believed
from envelopes.beliefs import (
    GainDistribution, Perspective, all_perspectives, estimation_error,
    naive_gain_distribution, naive_switch_ev, omniscient_gain,
    third_party_envelope_ev, third_party_gain_distribution,
)
from envelopes.game import EnvelopePair, Role, observed
from envelopes.money import GainDelta, Money, scale

D = Money.dollars
G = GainDelta.dollars
HALF = Fraction(1, 2)
PAIR = EnvelopePair(D("5.00"))


def test_naive_switch_ev_examples():
    assert naive_switch_ev(D("10.00")) == D("12.50")
    assert naive_switch_ev(D("5.00")) == D("6.25")
    assert naive_switch_ev(D("4.00")) == D("5.00")


def test_zero_observed_rejected():
    zero = Money(Fraction(0))
    with pytest.raises(ValueError):
        naive_switch_ev(zero)
    with pytest.raises(ValueError):
        naive_gain_distribution(zero)


def test_naive_gain_distribution_examples():
    assert naive_gain_distribution(D("5.00")).as_dict() == {G("-2.50"): HALF, G("5.00"): HALF}
    assert naive_gain_distribution(D("10.00")).as_dict() == {G("-5.00"): HALF, G("10.00"): HALF}


def test_third_party():
    assert third_party_gain_distribution(PAIR).as_dict() == {G("5.00"): HALF, G("-5.00"): HALF}
    assert third_party_gain_distribution(EnvelopePair(D("1"))).as_dict() == {G("1.00"): HALF, G("-1.00"): HALF}
    assert third_party_envelope_ev(PAIR) == D("7.50")
    assert third_party_envelope_ev(EnvelopePair(D("1"))) == D("1.50")


def test_omniscient():
    assert omniscient_gain(PAIR, Role.SMALLER).outcomes == ((G("5.00"), Fraction(1)),)
    assert omniscient_gain(PAIR, Role.LARGER).outcomes == ((G("-5.00"), Fraction(1)),)


def test_estimation_error_examples():
    # oracle: 1.25 * 500 - 1000 = -375 cents, 1.25 * 1000 - 500 = +750 cents
    assert estimation_error(PAIR, Role.SMALLER) == GainDelta(Fraction(-375))
    assert estimation_error(PAIR, Role.LARGER) == GainDelta(Fraction(750))


def test_gain_distribution_must_sum_to_one():
    with pytest.raises(ValueError):
        GainDistribution(((G("1.00"), HALF),))
    with pytest.raises(ValueError):
        GainDistribution(())


def test_perspective_reports():
    reports = {r.perspective: r for r in all_perspectives(PAIR, Role.SMALLER)}
    naive = reports[Perspective.NAIVE_PLAYER]
    assert naive.expected_gain == G("1.25") and naive.other_envelope_ev == D("6.25")
    third = reports[Perspective.THIRD_PARTY]
    assert third.expected_gain == GainDelta(Fraction(0)) and third.other_envelope_ev == D("7.50")
    omni = reports[Perspective.OMNISCIENT]
    assert omni.expected_gain == G("5.00") and omni.other_envelope_ev == D("10.00")
    js = omni.to_json()
    assert js["perspective"] == "omniscient"
    assert js["outcomes"] == [{"delta": {"num": "500", "den": "1", "display": "+$5.00"}, "prob": "1"}]
    assert js["expected_gain"]["num"] == "500"
    assert js["other_envelope_ev"] == {"num": "1000", "den": "1", "display": "$10.00"}


@given(money)
def test_naive_formulations_agree(a):
    assert naive_switch_ev(a).cents == naive_believed(a.cents)
    gain = naive_gain_distribution(a).expected_gain
    assert gain.cents == a.cents / 4 > 0
    assert GainDelta(naive_switch_ev(a).cents - a.cents) == gain


@given(money)
def test_third_party_has_zero_expected_gain(a):
    pair = EnvelopePair(a)
    assert third_party_gain_distribution(pair).expected_gain == GainDelta(Fraction(0))
    assert third_party_envelope_ev(pair) == scale(a, Fraction(3, 2))


@given(money)
def test_omniscient_averages_to_third_party(a):
    pair = EnvelopePair(a)
    mix: dict = {}
    third = third_party_gain_distribution(pair).as_dict()
    for role in Role:
        (d, p), = omniscient_gain(pair, role).outcomes
        assert p == 1 and d in third
        mix[d] = mix.get(d, 0) + HALF * p
    assert mix == third


@given(money)
def test_error_asymmetry(a):
    pair = EnvelopePair(a)
    small, large = estimation_error(pair, Role.SMALLER), estimation_error(pair, Role.LARGER)
    assert large.cents == Fraction(3, 2) * a.cents > 0 > small.cents == Fraction(-3, 4) * a.cents
    assert abs(large) / abs(small) == 2
    # oracle recomputation in plain fractions
    assert small.cents == naive_believed(observed(pair, Role.SMALLER).cents) - 2 * a.cents
