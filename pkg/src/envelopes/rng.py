"""Counter-based random streams.

Trial ``i`` of a run seeded with ``seed`` owns the SplitMix64 generator whose
initial state is ``mix64(mix64(seed) ^ i)``.  The seed is mixed before the XOR:
with a raw ``seed ^ i`` key, two small seeds address the same set of trial
keys in a different order, and order-free summaries come out identical.  Draw ``k`` of that trial (``k = 0, 1,
...``) is ``mix64(state + (k + 1) * GOLDEN_GAMMA)``, which is exactly what a
SplitMix64 generator returns on its ``k``-th call.  Because every draw is a
pure function of ``(seed, i, k)``, trials can be generated in any order, on any
number of workers, and two strategies can be fed the same trial streams.

``mix64`` is the SplitMix64 finalizer (Steele, Lea and Flood, 2014).

Draws are consumed in fixed slots so that streams stay aligned across
strategies: slot 0 deals the pair, slot 1 picks the held envelope, slot 2 is
used only by randomized decision rules.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

MASK64 = (1 << 64) - 1
TWO_64 = 1 << 64
GOLDEN_GAMMA = 0x9E3779B97F4A7C15

SLOT_DEAL = 0
SLOT_CHOOSE = 1
SLOT_DECIDE = 2


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def check_seed(seed: int) -> int:
    if not 0 <= seed <= MASK64:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return seed


class TrialStream:
    """Random source for a single trial.

    ``next_u64`` walks the SplitMix64 sequence; ``draw(slot)`` reads a slot
    directly.  The two agree: the ``k``-th ``next_u64`` call equals ``draw(k)``.
    """

    __slots__ = ("state", "_counter")

    def __init__(self, state: int) -> None:
        self.state = state & MASK64
        self._counter = 0

    @classmethod
    def for_trial(cls, seed: int, index: int) -> TrialStream:
        return cls(mix64(mix64(check_seed(seed)) ^ index))

    def draw(self, slot: int) -> int:
        return mix64(self.state + (slot + 1) * GOLDEN_GAMMA)

    def next_u64(self) -> int:
        out = self.draw(self._counter)
        self._counter += 1
        return out

    def uniform(self) -> Fraction:
        """Next draw as an exact rational in [0, 1)."""
        return Fraction(self.next_u64(), TWO_64)


def threshold(p: Fraction) -> int:
    """Smallest integer ``t`` with ``u < t  <=>  u / 2**64 < p`` for integer ``u``.

    May equal ``2**64`` (every draw passes).
    """
    t = p * TWO_64
    return -((-t.numerator) // t.denominator)


# -- vectorized path ---------------------------------------------------------

_U = np.uint64


def mix64_array(z: np.ndarray) -> np.ndarray:
    z = z.astype(np.uint64, copy=True)
    with np.errstate(over="ignore"):
        z ^= z >> _U(30)
        z *= _U(0xBF58476D1CE4E5B9)
        z ^= z >> _U(27)
        z *= _U(0x94D049BB133111EB)
        z ^= z >> _U(31)
    return z


def trial_states(seed: int, start: int, stop: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.uint64)
    return mix64_array(idx ^ _U(mix64(check_seed(seed))))


def draws(states: np.ndarray, slot: int) -> np.ndarray:
    offset = _U(((slot + 1) * GOLDEN_GAMMA) & MASK64)
    with np.errstate(over="ignore"):
        return mix64_array(states + offset)


def below(u: np.ndarray, p: Fraction) -> np.ndarray:
    """Vectorized ``u / 2**64 < p``."""
    t = threshold(p)
    if t >= TWO_64:
        return np.ones(u.shape, dtype=bool)
    if t <= 0:
        return np.zeros(u.shape, dtype=bool)
    return u < _U(t)
