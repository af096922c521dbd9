"""What each observer expects to gain by switching.

Three observers look at the same trial:

* the player who has opened one envelope and believes the other is equally
  likely to hold half or double the amount seen;
* a third party who knows both amounts but not which one the player holds;
* the game runner, who knows both amounts and the held envelope.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .game import EnvelopePair, Role, observed
from .money import ZERO_GAIN, GainDelta, Money, delta, money_display, scale

# the opened-envelope player's 50/50 split between "other is half" and "other is double"
SUBJECTIVE_PROB = Fraction(1, 2)
HALF = Fraction(1, 2)
DOUBLE = Fraction(2)
# the third party's uniform belief over which envelope is held
ROLE_PROB = Fraction(1, 2)


class Perspective(enum.Enum):
    NAIVE_PLAYER = "naive_player"
    THIRD_PARTY = "third_party"
    OMNISCIENT = "omniscient"


@dataclass(frozen=True)
class GainDistribution:
    outcomes: tuple[tuple[GainDelta, Fraction], ...]

    def __post_init__(self) -> None:
        if not self.outcomes:
            raise ValueError("empty gain distribution")
        total = sum(p for _, p in self.outcomes)
        if total != 1:
            raise ValueError(f"gain probabilities sum to {total}, not 1")

    @property
    def expected_gain(self) -> GainDelta:
        return sum((d * p for d, p in self.outcomes), ZERO_GAIN)

    def as_dict(self) -> dict[GainDelta, Fraction]:
        out: dict[GainDelta, Fraction] = {}
        for d, p in self.outcomes:
            out[d] = out.get(d, Fraction(0)) + p
        return out

    def to_json(self) -> list[dict]:
        return [{"delta": money_display(d), "prob": str(p)} for d, p in self.outcomes]


def _require_positive(amount: Money) -> None:
    if not amount:
        raise ValueError("the observed amount must be positive")


def naive_switch_ev(observed_amount: Money) -> Money:
    """Believed value of the other envelope: half-chance of half, half-chance of double."""
    _require_positive(observed_amount)
    return scale(observed_amount, SUBJECTIVE_PROB * HALF) + scale(
        observed_amount, (1 - SUBJECTIVE_PROB) * DOUBLE
    )


def naive_gain_distribution(observed_amount: Money) -> GainDistribution:
    _require_positive(observed_amount)
    return GainDistribution(
        (
            (delta(observed_amount, scale(observed_amount, HALF)), SUBJECTIVE_PROB),
            (delta(observed_amount, scale(observed_amount, DOUBLE)), 1 - SUBJECTIVE_PROB),
        )
    )


def third_party_gain_distribution(pair: EnvelopePair) -> GainDistribution:
    return GainDistribution(
        (
            (delta(pair.smaller, pair.larger), ROLE_PROB),
            (delta(pair.larger, pair.smaller), 1 - ROLE_PROB),
        )
    )


def third_party_envelope_ev(pair: EnvelopePair) -> Money:
    return scale(pair.smaller, ROLE_PROB) + scale(pair.larger, 1 - ROLE_PROB)


def omniscient_gain(pair: EnvelopePair, held: Role) -> GainDistribution:
    return GainDistribution(
        ((delta(observed(pair, held), observed(pair, held.other)), Fraction(1)),)
    )


def estimation_error(pair: EnvelopePair, held: Role) -> GainDelta:
    """Believed value of the other envelope minus what it actually holds.

    Positive means the player overestimates.
    """
    believed = naive_switch_ev(observed(pair, held))
    return delta(observed(pair, held.other), believed)


@dataclass(frozen=True)
class PerspectiveReport:
    perspective: Perspective
    gain_distribution: GainDistribution
    expected_gain: GainDelta
    other_envelope_ev: Money

    def to_json(self) -> dict:
        return {
            "perspective": self.perspective.value,
            "outcomes": self.gain_distribution.to_json(),
            "expected_gain": money_display(self.expected_gain),
            "other_envelope_ev": money_display(self.other_envelope_ev),
        }


def perspective_report(
    perspective: Perspective, pair: EnvelopePair, held: Role
) -> PerspectiveReport:
    if perspective is Perspective.NAIVE_PLAYER:
        seen = observed(pair, held)
        dist = naive_gain_distribution(seen)
        return PerspectiveReport(perspective, dist, dist.expected_gain, naive_switch_ev(seen))
    if perspective is Perspective.THIRD_PARTY:
        dist = third_party_gain_distribution(pair)
        # the third party values both envelopes alike, so this is not observed + gain
        return PerspectiveReport(
            perspective, dist, dist.expected_gain, third_party_envelope_ev(pair)
        )
    dist = omniscient_gain(pair, held)
    return PerspectiveReport(
        perspective, dist, dist.expected_gain, observed(pair, held) + dist.expected_gain
    )


def all_perspectives(pair: EnvelopePair, held: Role) -> list[PerspectiveReport]:
    return [perspective_report(p, pair, held) for p in Perspective]
