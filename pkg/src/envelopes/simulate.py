"""Seeded Monte Carlo runs, the exact enumeration oracle, and paired comparisons.

A run never accumulates floating-point payoffs.  Each trial lands in one cell
of a small table keyed by (base index, held role, decision); the cell counts
are integers, so summing them across workers is order-free and the summary is
bit-identical for any worker count.  Mean and variance are computed exactly
from the counts and only then converted to floats.
"""

from __future__ import annotations

import csv
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import islice
from typing import Iterator, Sequence, TextIO

import numpy as np

from .game import Decision, EnvelopePair, Prior, Role, Trial, choose, deal, resolve
from .game import observed as observed_amount
from .money import GainDelta, Money, money_display
from .rng import (
    SLOT_CHOOSE,
    SLOT_DEAL,
    SLOT_DECIDE,
    TWO_64,
    TrialStream,
    below,
    check_seed,
    draws,
    threshold,
    trial_states,
)
from .strategies import RandomSwitch, Strategy, decide

CHUNK = 1 << 17
Z95 = 1.96

ROLES = (Role.SMALLER, Role.LARGER)
DECISIONS = (Decision.STAY, Decision.SWITCH)


class SimulationError(RuntimeError):
    pass


@dataclass(frozen=True)
class SimConfig:
    prior: Prior
    strategy: Strategy
    trials: int
    seed: int
    workers: int = 1

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if self.trials > TWO_64:
            raise SimulationError(
                f"{self.trials} trials exceeds the 2**64 trial indices a seed can address"
            )
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")
        check_seed(self.seed)


# -- exact oracle --------------------------------------------------------------


def exact_payoff_distribution(prior: Prior, strategy: Strategy) -> dict[Money, Fraction]:
    """Full enumeration over (base, held role, decision)."""
    dist: dict[Money, Fraction] = {}
    for base, q in prior.support:
        pair = EnvelopePair(base)
        for role in ROLES:
            p_switch = strategy.switch_probability(observed_amount(pair, role))
            for decision, p in ((Decision.SWITCH, p_switch), (Decision.STAY, 1 - p_switch)):
                if p == 0:
                    continue
                payoff = resolve(pair, role, decision)
                dist[payoff] = dist.get(payoff, Fraction(0)) + q * Fraction(1, 2) * p
    return dist


def exact_expected_payoff(prior: Prior, strategy: Strategy) -> Money:
    dist = exact_payoff_distribution(prior, strategy)
    return Money(sum((m.cents * p for m, p in dist.items()), Fraction(0)))


def _moments(dist: dict) -> tuple[Fraction, Fraction]:
    """Mean and variance of a {value_in_cents: prob} distribution."""
    mean = sum((v * p for v, p in dist.items()), Fraction(0))
    var = sum(((v - mean) ** 2 * p for v, p in dist.items()), Fraction(0))
    return mean, var


def exact_payoff_variance(prior: Prior, strategy: Strategy) -> Fraction:
    """Per-trial payoff variance in dollars squared."""
    dist = exact_payoff_distribution(prior, strategy)
    _, var = _moments({m.cents: p for m, p in dist.items()})
    return var / 10_000


def exact_difference_distribution(
    prior: Prior, a: Strategy, b: Strategy
) -> dict[GainDelta, Fraction]:
    """Distribution of payoff(a) - payoff(b) when both see the same trial stream.

    Both rules read the same decision draw, so a switch probability of ``p``
    means "switch iff the draw is below ``p``" and the joint law follows.
    """
    dist: dict[GainDelta, Fraction] = {}
    for base, q in prior.support:
        pair = EnvelopePair(base)
        for role in ROLES:
            seen = observed_amount(pair, role)
            pa, pb = a.switch_probability(seen), b.switch_probability(seen)
            joint = {
                (Decision.SWITCH, Decision.SWITCH): min(pa, pb),
                (Decision.SWITCH, Decision.STAY): max(Fraction(0), pa - pb),
                (Decision.STAY, Decision.SWITCH): max(Fraction(0), pb - pa),
                (Decision.STAY, Decision.STAY): 1 - max(pa, pb),
            }
            for (da, db), p in joint.items():
                if p == 0:
                    continue
                d = GainDelta(resolve(pair, role, da).cents - resolve(pair, role, db).cents)
                dist[d] = dist.get(d, Fraction(0)) + q * Fraction(1, 2) * p
    return dist


# -- scalar reference path -------------------------------------------------------


def play_trial(prior: Prior, strategy: Strategy, seed: int, index: int) -> Trial:
    """One trial, drawn one value at a time from its own stream."""
    rand = TrialStream.for_trial(seed, index)
    pair = deal(prior, rand)
    held = choose(rand)
    return Trial(pair, held, decide(strategy, observed_amount(pair, held), rand))


# -- vectorized path -------------------------------------------------------------


def _deal_indices(prior: Prior, u: np.ndarray) -> np.ndarray:
    cuts = []
    for c in prior.cumulative()[:-1]:
        t = threshold(c)
        if t >= TWO_64:
            break
        cuts.append(t)
    if not cuts:
        return np.zeros(u.shape, dtype=np.int64)
    # first i with u < cuts[i] == number of cuts <= u
    return np.searchsorted(np.array(cuts, dtype=np.uint64), u, side="right").astype(np.int64)


def _decision_table(prior: Prior, strategy: Strategy) -> np.ndarray:
    """switch flag per (base index, role) for rules that ignore randomness."""
    table = np.zeros((len(prior.support), 2), dtype=bool)
    for i, base in enumerate(prior.bases):
        pair = EnvelopePair(base)
        for r, role in enumerate(ROLES):
            table[i, r] = decide(strategy, observed_amount(pair, role)) is Decision.SWITCH
    return table


@dataclass
class TrialBlock:
    """Trials ``start..stop-1`` as arrays; ``switch`` has one row per strategy."""

    start: int
    base_index: np.ndarray
    larger: np.ndarray
    switch: list[np.ndarray] = field(default_factory=list)


def simulate_block(
    prior: Prior, strategies: Sequence[Strategy], seed: int, start: int, stop: int
) -> TrialBlock:
    states = trial_states(seed, start, stop)
    base_index = _deal_indices(prior, draws(states, SLOT_DEAL))
    larger = ~below(draws(states, SLOT_CHOOSE), Fraction(1, 2))
    block = TrialBlock(start, base_index, larger)
    u_decide = None
    for strategy in strategies:
        if isinstance(strategy, RandomSwitch):
            if u_decide is None:
                u_decide = draws(states, SLOT_DECIDE)
            block.switch.append(below(u_decide, strategy.p))
        else:
            block.switch.append(_decision_table(prior, strategy)[base_index, larger.astype(np.int64)])
    return block


def _chunks(trials: int) -> Iterator[tuple[int, int]]:
    for s in range(0, trials, CHUNK):
        yield s, min(s + CHUNK, trials)


def _count_cells(
    prior: Prior, strategies: Sequence[Strategy], seed: int, trials: int, workers: int
) -> np.ndarray:
    n_cells = len(prior.support) * 2 * 2 ** len(strategies)

    def work(span: tuple[int, int]) -> np.ndarray:
        blk = simulate_block(prior, strategies, seed, *span)
        cell = blk.base_index * 2 + blk.larger
        for sw in blk.switch:
            cell = cell * 2 + sw
        return np.bincount(cell, minlength=n_cells).astype(np.int64)

    spans = _chunks(trials)
    total = np.zeros(n_cells, dtype=object)
    try:
        if workers == 1:
            for span in spans:
                total += work(span).astype(object)
        else:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                # submit in waves so pending work stays bounded
                while wave := list(islice(spans, 4 * workers)):
                    for counts in pool.map(work, wave):
                        total += counts.astype(object)
    except MemoryError as exc:
        raise SimulationError(f"out of memory simulating {trials} trials") from exc
    return total


def _cells(prior: Prior, n_strategies: int) -> Iterator[tuple[EnvelopePair, Role, tuple[Decision, ...]]]:
    """Cells in the same order as the flat index built by ``_count_cells``."""
    for base in prior.bases:
        pair = EnvelopePair(base)
        for role in ROLES:
            for k in range(2**n_strategies):
                bits = [(k >> (n_strategies - 1 - j)) & 1 for j in range(n_strategies)]
                yield pair, role, tuple(DECISIONS[b] for b in bits)


def _sample_stats(values_counts: list[tuple[Fraction, int]], n: int) -> tuple[float, float, float]:
    """Mean, unbiased variance and 95% normal half-width, values in cents."""
    s1 = sum((v * c for v, c in values_counts), Fraction(0))
    s2 = sum((v * v * c for v, c in values_counts), Fraction(0))
    mean = s1 / n
    if n > 1:
        var = (s2 - n * mean * mean) / (n - 1)
    else:
        var = Fraction(0)
    mean_d = float(mean / 100)
    var_d = float(var / 10_000)
    return mean_d, var_d, Z95 * math.sqrt(var_d / n)


def _fmt_float(x: float) -> str:
    return repr(float(x))


@dataclass(frozen=True)
class RunSummary:
    prior: str
    strategy: str
    seed: int
    trials: int
    mean_payoff: float
    sample_variance: float
    ci95_halfwidth: float
    exact_expected_payoff: Money
    exact_variance: Fraction
    mean_switch_gain: float

    @property
    def exact_sigma(self) -> float:
        """Standard error of the mean implied by the exact per-trial variance."""
        return math.sqrt(float(self.exact_variance) / self.trials)

    def to_json(self) -> dict:
        return {
            "prior": self.prior,
            "strategy": self.strategy,
            "seed": self.seed,
            "trials": self.trials,
            "mean_payoff": self.mean_payoff,
            "sample_variance": self.sample_variance,
            "ci95_halfwidth": self.ci95_halfwidth,
            "exact_expected_payoff": money_display(self.exact_expected_payoff),
            "exact_variance": str(self.exact_variance),
            "mean_switch_gain": self.mean_switch_gain,
        }

    CSV_FIELDS = (
        "prior", "strategy", "seed", "trials", "mean_payoff", "sample_variance",
        "ci95_halfwidth", "exact_expected_payoff", "exact_variance", "mean_switch_gain",
    )

    def csv_row(self) -> list[str]:
        return [
            self.prior, self.strategy, str(self.seed), str(self.trials),
            _fmt_float(self.mean_payoff), _fmt_float(self.sample_variance),
            _fmt_float(self.ci95_halfwidth), str(self.exact_expected_payoff),
            str(self.exact_variance), _fmt_float(self.mean_switch_gain),
        ]


def run(config: SimConfig) -> RunSummary:
    prior, strategy = config.prior, config.strategy
    counts = _count_cells(prior, [strategy], config.seed, config.trials, config.workers)
    payoffs, gains = [], []
    for c, (pair, role, (decision,)) in zip(counts, _cells(prior, 1)):
        if c:
            payoff = resolve(pair, role, decision).cents
            payoffs.append((payoff, c))
            gains.append((payoff - observed_amount(pair, role).cents, c))
    mean, var, ci = _sample_stats(payoffs, config.trials)
    gain_mean, _, _ = _sample_stats(gains, config.trials)
    return RunSummary(
        prior=prior.to_text(),
        strategy=strategy.name,
        seed=config.seed,
        trials=config.trials,
        mean_payoff=mean,
        sample_variance=var,
        ci95_halfwidth=ci,
        exact_expected_payoff=exact_expected_payoff(prior, strategy),
        exact_variance=exact_payoff_variance(prior, strategy),
        mean_switch_gain=gain_mean,
    )


@dataclass(frozen=True)
class CompareSummary:
    prior: str
    strategy_a: str
    strategy_b: str
    seed: int
    trials: int
    mean_difference: float
    sample_variance: float
    ci95_halfwidth: float
    nonzero_trials: int
    exact_difference: GainDelta
    exact_variance: Fraction

    @property
    def exact_sigma(self) -> float:
        return math.sqrt(float(self.exact_variance) / self.trials)

    def to_json(self) -> dict:
        return {
            "prior": self.prior,
            "strategy_a": self.strategy_a,
            "strategy_b": self.strategy_b,
            "seed": self.seed,
            "trials": self.trials,
            "mean_difference": self.mean_difference,
            "sample_variance": self.sample_variance,
            "ci95_halfwidth": self.ci95_halfwidth,
            "nonzero_trials": self.nonzero_trials,
            "exact_difference": money_display(self.exact_difference),
            "exact_variance": str(self.exact_variance),
        }

    CSV_FIELDS = (
        "prior", "strategy_a", "strategy_b", "seed", "trials", "mean_difference",
        "sample_variance", "ci95_halfwidth", "nonzero_trials", "exact_difference",
        "exact_variance",
    )

    def csv_row(self) -> list[str]:
        return [
            self.prior, self.strategy_a, self.strategy_b, str(self.seed), str(self.trials),
            _fmt_float(self.mean_difference), _fmt_float(self.sample_variance),
            _fmt_float(self.ci95_halfwidth), str(self.nonzero_trials),
            str(self.exact_difference), str(self.exact_variance),
        ]


def compare(
    prior: Prior, a: Strategy, b: Strategy, trials: int, seed: int, workers: int = 1
) -> CompareSummary:
    """Run ``a`` and ``b`` on identical trials (common random numbers)."""
    SimConfig(prior, a, trials, seed, workers)
    counts = _count_cells(prior, [a, b], seed, trials, workers)
    diffs, nonzero = [], 0
    for c, (pair, role, (da, db)) in zip(counts, _cells(prior, 2)):
        if c:
            d = resolve(pair, role, da).cents - resolve(pair, role, db).cents
            diffs.append((d, c))
            if d:
                nonzero += c
    mean, var, ci = _sample_stats(diffs, trials)
    exact = exact_difference_distribution(prior, a, b)
    exact_mean, exact_var = _moments({d.cents: p for d, p in exact.items()})
    return CompareSummary(
        prior=prior.to_text(),
        strategy_a=a.name,
        strategy_b=b.name,
        seed=seed,
        trials=trials,
        mean_difference=mean,
        sample_variance=var,
        ci95_halfwidth=ci,
        nonzero_trials=int(nonzero),
        exact_difference=GainDelta(exact_mean),
        exact_variance=exact_var / 10_000,
    )


# -- per-trial dump --------------------------------------------------------------


def dump_trials(
    out: TextIO,
    prior: Prior,
    strategies: Sequence[Strategy],
    trials: int,
    seed: int,
) -> None:
    """Write one CSV row per trial.

    With one strategy the columns are ``trial_index, base, held, observed,
    decision, payoff``; with two, ``decision`` and ``payoff`` get ``_a``/``_b``
    suffixes.
    """
    check_seed(seed)
    writer = csv.writer(out, lineterminator="\n")
    suffixes = [""] if len(strategies) == 1 else ["_a", "_b"]
    header = ["trial_index", "base", "held", "observed"]
    for s in suffixes:
        header += [f"decision{s}", f"payoff{s}"]
    writer.writerow(header)

    pairs = [EnvelopePair(b) for b in prior.bases]
    text = {
        (i, r, d): (str(observed_amount(p, role)), str(resolve(p, role, dec)))
        for i, p in enumerate(pairs)
        for r, role in enumerate(ROLES)
        for d, dec in enumerate(DECISIONS)
    }
    bases = [str(b) for b in prior.bases]
    for start, stop in _chunks(trials):
        blk = simulate_block(prior, strategies, seed, start, stop)
        bi = blk.base_index.tolist()
        lg = blk.larger.tolist()
        sw = [s.tolist() for s in blk.switch]
        for k in range(stop - start):
            i, r = bi[k], int(lg[k])
            row = [start + k, bases[i], ROLES[r].value, text[(i, r, 0)][0]]
            for s in sw:
                d = int(s[k])
                row += [DECISIONS[d].value, text[(i, r, d)][1]]
            writer.writerow(row)


def block_trials(prior: Prior, strategy: Strategy, seed: int, start: int, stop: int) -> list[Trial]:
    """Vectorized trials converted back to :class:`Trial` objects."""
    blk = simulate_block(prior, [strategy], seed, start, stop)
    out = []
    for i, lg, sw in zip(blk.base_index.tolist(), blk.larger.tolist(), blk.switch[0].tolist()):
        out.append(
            Trial(EnvelopePair(prior.bases[i]), ROLES[int(lg)], DECISIONS[int(sw)])
        )
    return out


def paired_differences(
    prior: Prior, a: Strategy, b: Strategy, trials: int, seed: int
) -> np.ndarray:
    """Per-trial payoff(a) - payoff(b) in cents, as exact Python ints/Fractions."""
    out = np.empty(trials, dtype=object)
    for start, stop in _chunks(trials):
        blk = simulate_block(prior, [a, b], seed, start, stop)
        for k, (i, lg, sa, sb) in enumerate(
            zip(blk.base_index.tolist(), blk.larger.tolist(), blk.switch[0].tolist(), blk.switch[1].tolist())
        ):
            pair, role = EnvelopePair(prior.bases[i]), ROLES[int(lg)]
            out[start + k] = (
                resolve(pair, role, DECISIONS[int(sa)]).cents
                - resolve(pair, role, DECISIONS[int(sb)]).cents
            )
    return out

