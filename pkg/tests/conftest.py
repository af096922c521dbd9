from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from envelopes.game import Prior
from envelopes.money import Money

# positive amounts, including sub-cent fractions
cents = st.fractions(min_value=Fraction(1, 100), max_value=10**9, max_denominator=1000)
money = cents.map(Money)
nonneg_ratio = st.fractions(min_value=0, max_value=1000, max_denominator=1000)
unit_prob = st.fractions(min_value=0, max_value=1, max_denominator=10**6)


@st.composite
def priors(draw, max_size: int = 20) -> Prior:
    bases = draw(st.lists(money, min_size=1, max_size=max_size, unique=True))
    weights = draw(st.lists(st.integers(1, 1000), min_size=len(bases), max_size=len(bases)))
    total = sum(weights)
    return Prior(tuple((b, Fraction(w, total)) for b, w in zip(bases, weights)))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
