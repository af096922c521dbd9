from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from oracles import splitmix64
from envelopes.rng import (
    MASK64, TWO_64, TrialStream, below, draws, mix64, threshold, trial_states,
)


def test_matches_published_splitmix64_vectors():
    s = TrialStream(0)
    assert [s.next_u64() for _ in range(3)] == [
        0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F,
    ]


@given(st.integers(0, MASK64))
def test_stream_is_splitmix64(state):
    ref = splitmix64(state)
    s = TrialStream(state)
    assert [s.next_u64() for _ in range(4)] == [next(ref) for _ in range(4)]


def test_trial_stream_key():
    assert TrialStream.for_trial(42, 7).state == mix64(mix64(42) ^ 7)


def test_small_seeds_do_not_share_trial_keys():
    a = set(trial_states(42, 0, 1 << 12).tolist())
    b = set(trial_states(7, 0, 1 << 12).tolist())
    assert not a & b


@pytest.mark.parametrize("seed", [0, 42, MASK64])
def test_vectorized_draws_match_scalar(seed):
    states = trial_states(seed, 1000, 1100)
    for slot in range(3):
        u = draws(states, slot)
        expected = [TrialStream.for_trial(seed, i).draw(slot) for i in range(1000, 1100)]
        assert u.tolist() == expected


def test_seed_range_checked():
    with pytest.raises(ValueError):
        TrialStream.for_trial(-1, 0)
    with pytest.raises(ValueError):
        trial_states(1 << 64, 0, 1)


@given(st.fractions(min_value=0, max_value=1), st.integers(0, MASK64))
def test_threshold_is_exact(p, u):
    assert (u < threshold(p)) == (Fraction(u, TWO_64) < p)


def test_below_edges():
    u = np.array([0, 1, MASK64], dtype=np.uint64)
    assert below(u, Fraction(0)).tolist() == [False, False, False]
    assert below(u, Fraction(1)).tolist() == [True, True, True]
    assert below(u, Fraction(1, TWO_64)).tolist() == [True, False, False]
