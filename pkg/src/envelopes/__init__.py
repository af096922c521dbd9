"""Exact and simulated analysis of the two-envelope switching game."""

from .analysis import RatioDerivation, derive_aggregate_ratio, verify_ratio_against_pair
from .beliefs import (
    GainDistribution,
    Perspective,
    PerspectiveReport,
    all_perspectives,
    estimation_error,
    naive_gain_distribution,
    naive_switch_ev,
    omniscient_gain,
    third_party_envelope_ev,
    third_party_gain_distribution,
)
from .game import Decision, EnvelopePair, Prior, Role, Trial, choose, deal, observed, parse_prior, resolve
from .money import GainDelta, Money, delta, scale
from .simulate import RunSummary, SimConfig, compare, exact_expected_payoff, run
from .strategies import AlwaysSwitch, NaiveBayesian, NeverSwitch, RandomSwitch, decide, parse_strategy

__version__ = "0.1.0"
