"""Independent reference computations used to freeze expected values.

Nothing here calls into the package's computation paths; amounts are plain
Fractions of cents.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


def brute_force_payoff(support: list[tuple[Fraction, Fraction]], switch_prob) -> Fraction:
    """Expected payoff in cents, enumerating (base, role, decision) explicitly.

    ``switch_prob(observed_cents) -> Fraction``.
    """
    total = Fraction(0)
    for (base, q), held_larger, switch in itertools.product(support, (False, True), (False, True)):
        seen = 2 * base if held_larger else base
        other = base if held_larger else 2 * base
        p = switch_prob(seen)
        p_dec = p if switch else 1 - p
        total += q * Fraction(1, 2) * p_dec * (other if switch else seen)
    return total


def brute_force_variance(support, switch_prob) -> Fraction:
    mean = brute_force_payoff(support, switch_prob)
    second = Fraction(0)
    for (base, q), held_larger, switch in itertools.product(support, (False, True), (False, True)):
        seen = 2 * base if held_larger else base
        other = base if held_larger else 2 * base
        p = switch_prob(seen)
        p_dec = p if switch else 1 - p
        v = other if switch else seen
        second += q * Fraction(1, 2) * p_dec * v * v
    return second - mean * mean


def naive_believed(seen: Fraction) -> Fraction:
    return Fraction(1, 2) * (seen / 2) + Fraction(1, 2) * (2 * seen)


def splitmix64(state: int):
    """Textbook SplitMix64 generator."""
    mask = (1 << 64) - 1
    while True:
        state = (state + 0x9E3779B97F4A7C15) & mask
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & mask
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & mask
        yield z ^ (z >> 31)
