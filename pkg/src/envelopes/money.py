"""Exact money arithmetic.

Amounts are held as :class:`fractions.Fraction` numbers of cents, so halving,
doubling and 5/4 scaling never round.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Union

RationalLike = Union[int, Fraction]

_DOLLARS_RE = re.compile(r"^\$?(\d+)(?:\.(\d+))?$")


def _exact(value: RationalLike, what: str) -> Fraction:
    # bool is an int subclass; floats are rejected outright
    if isinstance(value, bool) or not isinstance(value, Rational):
        raise TypeError(f"{what} must be an int or Fraction, got {type(value).__name__}")
    return Fraction(value)


def parse_dollars(text: str) -> Fraction:
    """Parse ``"5.00"`` / ``"$7.37"`` / ``"12"`` into an exact number of cents."""
    m = _DOLLARS_RE.match(text.strip())
    if not m:
        raise ValueError(f"not a dollar amount: {text!r}")
    whole, frac = m.group(1), m.group(2) or ""
    return Fraction(int(whole + frac), 10 ** len(frac)) * 100


def _format_cents(cents: Fraction) -> str:
    if cents.denominator == 1:
        dollars, rem = divmod(abs(cents.numerator), 100)
        return f"${dollars}.{rem:02d}"
    return f"{abs(cents.numerator)}/{cents.denominator} cents"


@dataclass(frozen=True, order=True)
class Money:
    """A non-negative exact amount of currency, in cents."""

    cents: Fraction

    def __post_init__(self) -> None:
        cents = _exact(self.cents, "cents")
        if cents < 0:
            raise ValueError(f"Money cannot be negative: {cents} cents")
        object.__setattr__(self, "cents", cents)

    @classmethod
    def dollars(cls, text: str) -> Money:
        return cls(parse_dollars(text))

    @classmethod
    def from_cents(cls, numerator: int, denominator: int = 1) -> Money:
        return cls(Fraction(numerator, denominator))

    @property
    def numerator(self) -> int:
        return self.cents.numerator

    @property
    def denominator(self) -> int:
        return self.cents.denominator

    @property
    def is_whole_cents(self) -> bool:
        return self.cents.denominator == 1

    def __add__(self, other: object) -> Money:
        if isinstance(other, Money):
            return Money(self.cents + other.cents)
        if isinstance(other, GainDelta):
            return Money(self.cents + other.cents)
        return NotImplemented

    def __bool__(self) -> bool:
        return self.cents != 0

    def ratio_to(self, other: Money) -> Fraction:
        """Exact ``self / other``."""
        if not other:
            raise ZeroDivisionError("ratio to a zero amount")
        return self.cents / other.cents

    def to_float_dollars(self) -> float:
        return float(self.cents / 100)

    def to_json(self) -> dict:
        return {"num": str(self.numerator), "den": str(self.denominator)}

    @classmethod
    def from_json(cls, obj: dict) -> Money:
        return cls(Fraction(int(obj["num"]), int(obj["den"])))

    def __str__(self) -> str:
        return _format_cents(self.cents)

    def __repr__(self) -> str:
        return f"Money({self})"


@dataclass(frozen=True, order=True)
class GainDelta:
    """Signed exact change in money, in cents. Positive is a gain."""

    cents: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "cents", _exact(self.cents, "cents"))

    @classmethod
    def dollars(cls, text: str) -> GainDelta:
        text = text.strip()
        sign = -1 if text.startswith("-") else 1
        return cls(sign * parse_dollars(text.lstrip("+-")))

    def __add__(self, other: object) -> GainDelta:
        if isinstance(other, GainDelta):
            return GainDelta(self.cents + other.cents)
        return NotImplemented

    def __sub__(self, other: object) -> GainDelta:
        if isinstance(other, GainDelta):
            return GainDelta(self.cents - other.cents)
        return NotImplemented

    def __neg__(self) -> GainDelta:
        return GainDelta(-self.cents)

    def __abs__(self) -> GainDelta:
        return GainDelta(abs(self.cents))

    def __mul__(self, ratio: RationalLike) -> GainDelta:
        if isinstance(ratio, (GainDelta, Money)):
            return NotImplemented
        return GainDelta(self.cents * _exact(ratio, "ratio"))

    __rmul__ = __mul__

    def __truediv__(self, other: GainDelta) -> Fraction:
        if not isinstance(other, GainDelta):
            return NotImplemented
        return self.cents / other.cents

    def __bool__(self) -> bool:
        return self.cents != 0

    def to_json(self) -> dict:
        return {"num": str(self.cents.numerator), "den": str(self.cents.denominator)}

    @classmethod
    def from_json(cls, obj: dict) -> GainDelta:
        return cls(Fraction(int(obj["num"]), int(obj["den"])))

    def __str__(self) -> str:
        if self.cents == 0:
            return _format_cents(self.cents)
        sign = "+" if self.cents > 0 else "-"
        return sign + _format_cents(self.cents)

    def __repr__(self) -> str:
        return f"GainDelta({self})"


ZERO_GAIN = GainDelta(Fraction(0))


def scale(amount: Money, ratio: RationalLike) -> Money:
    """Multiply ``amount`` by a non-negative exact ratio."""
    r = _exact(ratio, "ratio")
    if r < 0:
        raise ValueError(f"scale ratio must be >= 0, got {r}")
    return Money(amount.cents * r)


def delta(start: Money, end: Money) -> GainDelta:
    """Signed change going from ``start`` to ``end``."""
    return GainDelta(end.cents - start.cents)


def money_display(value: Money | GainDelta) -> dict:
    """JSON form carrying both the exact fraction and the readable string."""
    out = value.to_json()
    out["display"] = str(value)
    return out
