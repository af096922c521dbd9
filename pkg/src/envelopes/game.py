"""Envelope pairs, roles, priors over the smaller amount, and a single play.

The amount a player holds is never a free variable: it is always derived from
the pair and the :class:`Role` the player holds.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate
from typing import Iterable, Protocol, Sequence

from .money import Money, parse_dollars, scale
from .rng import TWO_64


class RandomSource(Protocol):
    def next_u64(self) -> int: ...


class Role(enum.Enum):
    SMALLER = "smaller"
    LARGER = "larger"

    @property
    def other(self) -> Role:
        return Role.LARGER if self is Role.SMALLER else Role.SMALLER


class Decision(enum.Enum):
    SWITCH = "switch"
    STAY = "stay"


@dataclass(frozen=True)
class EnvelopePair:
    smaller: Money

    def __post_init__(self) -> None:
        if not isinstance(self.smaller, Money):
            raise TypeError("smaller must be Money")
        if not self.smaller:
            raise ValueError("the smaller envelope must hold a positive amount")

    @property
    def larger(self) -> Money:
        return scale(self.smaller, 2)

    @property
    def total(self) -> Money:
        return self.smaller + self.larger

    def __str__(self) -> str:
        return f"({self.smaller}, {self.larger})"


class PriorError(ValueError):
    pass


@dataclass(frozen=True)
class Prior:
    """Finite distribution over the smaller amount of the pair."""

    support: tuple[tuple[Money, Fraction], ...]

    def __post_init__(self) -> None:
        support = tuple((base, Fraction(p)) for base, p in self.support)
        if not support:
            raise PriorError("prior support is empty")
        seen = set()
        for base, p in support:
            if not isinstance(base, Money) or not base:
                raise PriorError(f"base amounts must be positive Money, got {base!r}")
            if base in seen:
                raise PriorError(f"duplicate base amount {base}")
            seen.add(base)
            if not 0 < p <= 1:
                raise PriorError(f"probability {p} for {base} is outside (0, 1]")
        total = sum(p for _, p in support)
        if total != 1:
            raise PriorError(f"probabilities sum to {total}, not 1")
        object.__setattr__(self, "support", support)

    @classmethod
    def point(cls, base: Money) -> Prior:
        return cls(((base, Fraction(1)),))

    @classmethod
    def uniform(cls, bases: Iterable[Money]) -> Prior:
        bases = list(bases)
        if not bases:
            raise PriorError("prior support is empty")
        return cls(tuple((b, Fraction(1, len(bases))) for b in bases))

    @property
    def bases(self) -> list[Money]:
        return [b for b, _ in self.support]

    @property
    def probs(self) -> list[Fraction]:
        return [p for _, p in self.support]

    def cumulative(self) -> list[Fraction]:
        return list(accumulate(self.probs))

    def mean_base(self) -> Money:
        return Money(sum((b.cents * p for b, p in self.support), Fraction(0)))

    def to_text(self) -> str:
        if len(self.support) == 1:
            return f"point:{_dollar_text(self.bases[0])}"
        return "table:" + ",".join(f"{_dollar_text(b)}={p}" for b, p in self.support)


def _dollar_text(m: Money) -> str:
    return str(m)[1:] if m.is_whole_cents else f"{m.cents / 100}"


def _parse_prob(text: str) -> Fraction:
    text = text.strip()
    try:
        # Fraction parses "1/3" and "0.25" exactly
        p = Fraction(text)
    except ValueError:
        raise PriorError(f"bad probability {text!r}") from None
    if "e" in text.lower():
        raise PriorError(f"bad probability {text!r}")
    return p


def _parse_amount(text: str) -> Money:
    try:
        return Money(parse_dollars(text))
    except ValueError as exc:
        raise PriorError(str(exc)) from None


def parse_prior(text: str) -> Prior:
    """Parse ``point:<d>``, ``uniform:<d1>,<d2>,...`` or ``table:<d1>=<p1>,...``."""
    kind, sep, body = text.strip().partition(":")
    if not sep or not body:
        raise PriorError(f"bad prior {text!r}; expected point:, uniform: or table:")
    items = [s.strip() for s in body.split(",")]
    if kind == "point":
        if len(items) != 1:
            raise PriorError("point: takes exactly one amount")
        return Prior.point(_parse_amount(items[0]))
    if kind == "uniform":
        return Prior.uniform(_parse_amount(s) for s in items)
    if kind == "table":
        support = []
        for item in items:
            amount, eq, prob = item.partition("=")
            if not eq:
                raise PriorError(f"table entry {item!r} is missing '=<prob>'")
            support.append((_parse_amount(amount), _parse_prob(prob)))
        return Prior(tuple(support))
    raise PriorError(f"unknown prior kind {kind!r}")


def pick_index(cumulative: Sequence[Fraction], u: int) -> int:
    """First index whose cumulative probability exceeds ``u / 2**64``."""
    x = Fraction(u, TWO_64)
    for i, c in enumerate(cumulative):
        if x < c:
            return i
    return len(cumulative) - 1


def deal(prior: Prior, rand: RandomSource) -> EnvelopePair:
    """Draw the smaller amount from ``prior``; consumes one draw."""
    i = pick_index(prior.cumulative(), rand.next_u64())
    return EnvelopePair(prior.bases[i])


def choose(rand: RandomSource) -> Role:
    """Uniform pick of the held envelope; consumes one draw."""
    return Role.SMALLER if rand.next_u64() < (1 << 63) else Role.LARGER


def observed(pair: EnvelopePair, held: Role) -> Money:
    return pair.smaller if held is Role.SMALLER else pair.larger


def resolve(pair: EnvelopePair, held: Role, decision: Decision) -> Money:
    if decision is Decision.STAY:
        return observed(pair, held)
    return observed(pair, held.other)


@dataclass(frozen=True)
class Trial:
    pair: EnvelopePair
    held: Role
    decision: Decision

    @property
    def observed(self) -> Money:
        return observed(self.pair, self.held)

    @property
    def payoff(self) -> Money:
        return resolve(self.pair, self.held, self.decision)
