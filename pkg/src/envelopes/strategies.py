"""Decision rules: given the amount seen, switch or stay."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .beliefs import naive_switch_ev
from .game import Decision, RandomSource
from .money import Money
from .rng import TWO_64


def _require_positive(amount: Money) -> None:
    if not amount:
        raise ValueError("the observed amount must be positive")


@dataclass(frozen=True)
class AlwaysSwitch:
    name = "always-switch"
    uses_randomness = False

    def switch_probability(self, observed: Money) -> Fraction:
        return Fraction(1)


@dataclass(frozen=True)
class NeverSwitch:
    name = "never-switch"
    uses_randomness = False

    def switch_probability(self, observed: Money) -> Fraction:
        return Fraction(0)


@dataclass(frozen=True)
class RandomSwitch:
    p: Fraction
    uses_randomness = True

    def __post_init__(self) -> None:
        p = Fraction(self.p)
        if not 0 <= p <= 1:
            raise ValueError(f"switch probability must be in [0, 1], got {p}")
        object.__setattr__(self, "p", p)

    @property
    def name(self) -> str:
        return f"random:{self.p}"

    def switch_probability(self, observed: Money) -> Fraction:
        return self.p


@dataclass(frozen=True)
class NaiveBayesian:
    """Switch whenever the half/double belief values the other envelope higher."""

    name = "naive-bayesian"
    uses_randomness = False

    def switch_probability(self, observed: Money) -> Fraction:
        return Fraction(int(naive_switch_ev(observed) > observed))


Strategy = Union[AlwaysSwitch, NeverSwitch, RandomSwitch, NaiveBayesian]


def decide(strategy: Strategy, observed: Money, rand: Optional[RandomSource] = None) -> Decision:
    """Apply ``strategy``. Only :class:`RandomSwitch` reads ``rand``, exactly once."""
    _require_positive(observed)
    if isinstance(strategy, RandomSwitch):
        if rand is None:
            raise ValueError("RandomSwitch needs a random source")
        u = rand.next_u64()
        return Decision.SWITCH if Fraction(u, TWO_64) < strategy.p else Decision.STAY
    p = strategy.switch_probability(observed)
    return Decision.SWITCH if p == 1 else Decision.STAY


def parse_strategy(text: str) -> Strategy:
    """Parse ``always-switch``, ``never-switch``, ``random:<p>`` or ``naive-bayesian``."""
    text = text.strip()
    if text == "always-switch":
        return AlwaysSwitch()
    if text == "never-switch":
        return NeverSwitch()
    if text == "naive-bayesian":
        return NaiveBayesian()
    if text.startswith("random:"):
        raw = text[len("random:"):]
        if "e" in raw.lower():
            raise ValueError(f"bad switch probability {raw!r}")
        try:
            return RandomSwitch(Fraction(raw))
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"bad switch probability {raw!r}") from None
    raise ValueError(f"unknown strategy {text!r}")
