"""Aggregate believed value of the other envelope versus its objective value.

All quantities are multiples of the smaller amount X of a pair (X, 2X).
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction

from .beliefs import estimation_error, naive_switch_ev, third_party_envelope_ev
from .game import EnvelopePair, Role

_HALF = Fraction(1, 2)


@dataclass(frozen=True)
class RatioDerivation:
    believed_small_holder: Fraction
    believed_large_holder: Fraction
    believed_average: Fraction
    objective_average: Fraction
    ratio: Fraction

    @property
    def bias(self) -> Fraction:
        return self.believed_average - self.objective_average

    def to_json(self) -> dict:
        out = {k: str(v) for k, v in asdict(self).items()}
        out["bias"] = str(self.bias)
        return out

    def steps(self) -> list[str]:
        """Readable walk-through of the derivation, one line per step."""
        s, l, b, o, r = (
            self.believed_small_holder,
            self.believed_large_holder,
            self.believed_average,
            self.objective_average,
            self.ratio,
        )
        return [
            f"holding X:  other believed worth .5(.5X + 2X) = {exact_decimal(s)}X",
            f"holding 2X: other believed worth .5(X + 4X) = {exact_decimal(l)}X",
            f"average believed value .5({exact_decimal(s)}X + {exact_decimal(l)}X) = {exact_decimal(b)}X",
            f"objective average .5(X + 2X) = {exact_decimal(o)}X",
            f"ratio {exact_decimal(b)}X / {exact_decimal(o)}X = {exact_decimal(r)}",
        ]


def exact_decimal(q: Fraction) -> str:
    """Exact decimal rendering when the denominator is 2^a 5^b, else ``n/d``."""
    d, twos, fives = q.denominator, 0, 0
    while d % 2 == 0:
        d, twos = d // 2, twos + 1
    while d % 5 == 0:
        d, fives = d // 5, fives + 1
    if d != 1:
        return str(q)
    digits = max(twos, fives)
    if digits == 0:
        return str(q.numerator)
    whole, frac = divmod(abs(q.numerator) * 10**digits // q.denominator, 10**digits)
    sign = "-" if q < 0 else ""
    return f"{sign}{whole}.{frac:0{digits}d}"


def _naive_multiple(held: Fraction) -> Fraction:
    return _HALF * (_HALF * held + 2 * held)


def derive_aggregate_ratio() -> RatioDerivation:
    small = _naive_multiple(Fraction(1))
    large = _naive_multiple(Fraction(2))
    believed = _HALF * (small + large)
    objective = _HALF * (Fraction(1) + Fraction(2))
    return RatioDerivation(small, large, believed, objective, believed / objective)


def verify_ratio_against_pair(pair: EnvelopePair) -> RatioDerivation:
    """Redo the derivation in money for ``pair`` and divide out the smaller amount."""
    x = pair.smaller
    small = naive_switch_ev(pair.smaller).ratio_to(x)
    large = naive_switch_ev(pair.larger).ratio_to(x)
    believed = (small + large) / 2
    objective = third_party_envelope_ev(pair).ratio_to(x)
    return RatioDerivation(small, large, believed, objective, believed / objective)


def role_averaged_error(pair: EnvelopePair) -> Fraction:
    """Mean estimation error over the two held roles, in multiples of X."""
    total = estimation_error(pair, Role.SMALLER) + estimation_error(pair, Role.LARGER)
    return total.cents / 2 / pair.smaller.cents
