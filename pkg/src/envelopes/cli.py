"""Command-line interface.

Exit status: 0 on success, 1 when a check fails, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Sequence

from . import analysis, beliefs, simulate
from .game import EnvelopePair, Prior, PriorError, Role, parse_prior
from .money import GainDelta, Money, money_display
from .strategies import parse_strategy

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2

DEFAULTS = {
    "prior": "point:5.00",
    "strategy": None,
    "trials": 100_000,
    "seed": 42,
    "workers": 1,
    "format": "text",
}

CSV_HELP = """\
CSV output (--format csv) is a header line plus one summary row.
simulate columns: prior, strategy, seed, trials, mean_payoff, sample_variance,
  ci95_halfwidth, exact_expected_payoff, exact_variance, mean_switch_gain
compare columns: prior, strategy_a, strategy_b, seed, trials, mean_difference,
  sample_variance, ci95_halfwidth, nonzero_trials, exact_difference, exact_variance
--dump-trials columns: trial_index, base, held, observed, decision, payoff
  (compare writes decision_a, payoff_a, decision_b, payoff_b instead)
Payoffs are in dollars; variances in dollars squared.
"""


# -- paper-check -------------------------------------------------------------------


@dataclass(frozen=True)
class Check:
    name: str
    computed: Any
    expected: Any

    @property
    def ok(self) -> bool:
        return self.computed == self.expected


def _dist_text(dist: beliefs.GainDistribution | dict) -> str:
    items = dist.as_dict() if isinstance(dist, beliefs.GainDistribution) else dist
    return "{" + ", ".join(f"{d}: {p}" for d, p in sorted(items.items())) + "}"


def _gains(*pairs: tuple[str, Fraction]) -> dict[GainDelta, Fraction]:
    return {GainDelta.dollars(d): p for d, p in pairs}


def paper_checks() -> list[tuple[str, list[Check], list[str]]]:
    """Sections of (title, checks, extra narrative lines)."""
    half = Fraction(1, 2)
    ten, five = Money.dollars("10.00"), Money.dollars("5.00")
    pair = EnvelopePair(five)

    naive = [
        Check("naive EV of other envelope when holding $10.00", beliefs.naive_switch_ev(ten), Money.dollars("12.50")),
        Check("naive EV of other envelope when holding $5.00", beliefs.naive_switch_ev(five), Money.dollars("6.25")),
    ]

    scenario = [
        Check("naive $5.00 holder's gain distribution",
              beliefs.naive_gain_distribution(five).as_dict(), _gains(("-2.50", half), ("+5.00", half))),
        Check("naive $10.00 holder's gain distribution",
              beliefs.naive_gain_distribution(ten).as_dict(), _gains(("-5.00", half), ("+10.00", half))),
        Check("third party's gain distribution",
              beliefs.third_party_gain_distribution(pair).as_dict(), _gains(("-5.00", half), ("+5.00", half))),
        Check("third party's expected gain from switching",
              beliefs.third_party_gain_distribution(pair).expected_gain, GainDelta.dollars("0.00")),
        Check("third party's value of each envelope", beliefs.third_party_envelope_ev(pair), Money.dollars("7.50")),
        Check("omniscient gain when holding $5.00",
              beliefs.omniscient_gain(pair, Role.SMALLER).as_dict(), _gains(("+5.00", Fraction(1)))),
        Check("omniscient gain when holding $10.00",
              beliefs.omniscient_gain(pair, Role.LARGER).as_dict(), _gains(("-5.00", Fraction(1)))),
    ]

    err_small = beliefs.estimation_error(pair, Role.SMALLER)
    err_large = beliefs.estimation_error(pair, Role.LARGER)
    asymmetry = [
        Check("estimation error when holding $5.00", err_small, GainDelta.dollars("-3.75")),
        Check("estimation error when holding $10.00", err_large, GainDelta.dollars("+7.50")),
        Check("error magnitude ratio larger/smaller", abs(err_large) / abs(err_small), Fraction(2)),
    ]

    d = analysis.derive_aggregate_ratio()
    on_pair = analysis.verify_ratio_against_pair(pair)
    derivation = [
        Check("believed value, holder of X (multiples of X)", d.believed_small_holder, Fraction(5, 4)),
        Check("believed value, holder of 2X (multiples of X)", d.believed_large_holder, Fraction(5, 2)),
        Check("average believed value (multiples of X)", d.believed_average, Fraction(15, 8)),
        Check("objective average value (multiples of X)", d.objective_average, Fraction(3, 2)),
        Check("believed/objective ratio", d.ratio, Fraction(5, 4)),
        Check("derivation redone on the $5.00/$10.00 pair", on_pair, d),
        Check("bias equals role-averaged estimation error (multiples of X)",
              analysis.role_averaged_error(pair), d.bias),
    ]

    prior = Prior.point(five)
    always = simulate.exact_expected_payoff(prior, parse_strategy("always-switch"))
    never = simulate.exact_expected_payoff(prior, parse_strategy("never-switch"))
    indifference = [
        Check("exact payoff, always switch vs never switch", always, never),
    ]

    return [
        ("Naive switching argument", naive, []),
        ("$5.00 / $10.00 scenario, three perspectives", scenario, []),
        ("Asymmetric estimation error", asymmetry, []),
        ("Aggregate ratio", derivation, d.steps()),
        ("Indifference", indifference, [f"expected payoff either way: {always}"]),
    ]


def _show(value: Any) -> str:
    if isinstance(value, dict):
        return _dist_text(value)
    if isinstance(value, analysis.RatioDerivation):
        return "(" + ", ".join(analysis.exact_decimal(v) for v in (
            value.believed_small_holder, value.believed_large_holder,
            value.believed_average, value.objective_average, value.ratio)) + ")"
    if isinstance(value, Fraction):
        return f"{analysis.exact_decimal(value)}"
    return str(value)


def paper_check(out=None, fmt: str = "text") -> int:
    out = out or sys.stdout
    sections = paper_checks()
    first_failure = None
    records = []
    lines = []
    for title, checks, narrative in sections:
        lines.append(f"== {title}")
        lines.extend(f"   {n}" for n in narrative)
        for c in checks:
            mark = "ok  " if c.ok else "FAIL"
            lines.append(f"[{mark}] {c.name}: {_show(c.computed)} (expected {_show(c.expected)})")
            records.append({"section": title, "name": c.name, "computed": _show(c.computed),
                            "expected": _show(c.expected), "ok": c.ok})
            if not c.ok and first_failure is None:
                first_failure = c.name
    if first_failure is None:
        lines.append("all identities hold exactly")
    else:
        lines.append(f"FAILED: {first_failure}")

    if fmt == "json":
        json.dump({"ok": first_failure is None, "first_failure": first_failure,
                   "checks": records}, out, indent=2)
        out.write("\n")
        if first_failure is not None:
            print(f"paper-check failed: {first_failure}", file=sys.stderr)
    else:
        out.write("\n".join(lines) + "\n")
    return EXIT_OK if first_failure is None else EXIT_CHECK_FAILED


# -- argument handling -----------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="envelopes",
        description="Two-envelope game: exact expectations, Monte Carlo runs and checks.",
        epilog=CSV_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--config", type=Path, help="JSON file of default flag values")
    sub = parser.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("paper-check", help="recompute and verify every published value")
    pc.add_argument("--format", choices=["text", "json"], default=None)

    def sim_flags(p: argparse.ArgumentParser, repeat_strategy: bool) -> None:
        p.add_argument("--prior", help="point:<d> | uniform:<d1>,<d2>,... | table:<d1>=<p1>,...")
        if repeat_strategy:
            p.add_argument("--strategy", action="append",
                           help="give twice: first is A, second is B "
                                "(default always-switch vs never-switch)")
        else:
            p.add_argument("--strategy",
                           help="always-switch | never-switch | random:<p> | naive-bayesian")
        p.add_argument("--trials", type=int)
        p.add_argument("--seed", type=int)
        p.add_argument("--workers", type=int)
        p.add_argument("--format", choices=["json", "csv", "text"])
        p.add_argument("--dump-trials", type=Path, metavar="PATH",
                       help="write one CSV row per trial to PATH")

    sim_flags(sub.add_parser("simulate", help="Monte Carlo run of one strategy",
                             epilog=CSV_HELP, formatter_class=argparse.RawDescriptionHelpFormatter), False)
    sim_flags(sub.add_parser("compare", help="paired comparison of two strategies",
                             epilog=CSV_HELP, formatter_class=argparse.RawDescriptionHelpFormatter), True)

    ex = sub.add_parser("exact", help="exact expected payoff by enumeration")
    ex.add_argument("--prior")
    ex.add_argument("--strategy")
    ex.add_argument("--format", choices=["json", "csv", "text"])

    asym = sub.add_parser("asymmetry", help="estimation error table for one pair")
    asym.add_argument("--pair", default=None, metavar="DOLLARS",
                      help="amount in the smaller envelope (default 5.00)")
    asym.add_argument("--format", choices=["json", "text"])
    return parser


def _load_config(parser: argparse.ArgumentParser, path: Path | None) -> dict:
    if path is None:
        return {}
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        parser.error(f"cannot read config {path}: {exc}")
    if not isinstance(data, dict):
        parser.error(f"config {path} must hold a JSON object")
    unknown = set(data) - set(DEFAULTS)
    if unknown:
        parser.error(f"unknown config keys: {', '.join(sorted(unknown))}")
    return data


def _setting(args: argparse.Namespace, config: dict, key: str) -> Any:
    value = getattr(args, key, None)
    if value is not None:
        return value
    return config.get(key, DEFAULTS[key])


def _parsed(parser: argparse.ArgumentParser, fn: Callable, text: str, what: str) -> Any:
    try:
        return fn(text)
    except (ValueError, PriorError) as exc:
        parser.error(f"invalid {what} {text!r}: {exc}")


def _emit(out, fmt: str, obj: Any, text_lines: list[str]) -> None:
    if fmt == "json":
        out.write(json.dumps(obj.to_json() if hasattr(obj, "to_json") else obj, indent=2) + "\n")
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(obj.CSV_FIELDS)
        w.writerow(obj.csv_row())
        out.write(buf.getvalue())
    else:
        out.write("\n".join(text_lines) + "\n")


@dataclass(frozen=True)
class ExactResult:
    prior: str
    strategy: str
    expected_payoff: Money
    variance: Fraction

    CSV_FIELDS = ("prior", "strategy", "exact_expected_payoff", "exact_variance")

    def to_json(self) -> dict:
        return {"prior": self.prior, "strategy": self.strategy,
                "exact_expected_payoff": money_display(self.expected_payoff),
                "exact_variance": str(self.variance)}

    def csv_row(self) -> list[str]:
        return [self.prior, self.strategy, str(self.expected_payoff), str(self.variance)]


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _dispatch(parser, args, out)
    except SystemExit as exc:
        return int(exc.code or 0)


def _dispatch(parser: argparse.ArgumentParser, args: argparse.Namespace, out) -> int:
    config = _load_config(parser, args.config)
    fmt = _setting(args, config, "format")

    if args.command == "paper-check":
        return paper_check(out, "json" if fmt == "json" else "text")

    if args.command == "asymmetry":
        text = args.pair or "5.00"
        amount = _parsed(parser, Money.dollars, text, "pair amount")
        if not amount:
            parser.error("--pair must be a positive amount")
        return _asymmetry(EnvelopePair(amount), out, fmt)

    prior = _parsed(parser, parse_prior, _setting(args, config, "prior"), "prior")

    if args.command == "exact":
        strategy = _parsed(parser, parse_strategy,
                           _setting(args, config, "strategy") or "never-switch", "strategy")
        res = ExactResult(prior.to_text(), strategy.name,
                          simulate.exact_expected_payoff(prior, strategy),
                          simulate.exact_payoff_variance(prior, strategy))
        _emit(out, fmt, res, [str(res.expected_payoff)])
        return EXIT_OK

    trials = _setting(args, config, "trials")
    seed = _setting(args, config, "seed")
    workers = _setting(args, config, "workers")
    if not isinstance(trials, int) or trials < 1:
        parser.error("--trials must be a positive integer")
    if not isinstance(seed, int) or not 0 <= seed < 2**64:
        parser.error("--seed must be an unsigned 64-bit integer")
    if not isinstance(workers, int) or workers < 1:
        parser.error("--workers must be a positive integer")

    if args.command == "simulate":
        strategy = _parsed(parser, parse_strategy,
                           _setting(args, config, "strategy") or "always-switch", "strategy")
        summary = simulate.run(simulate.SimConfig(prior, strategy, trials, seed, workers))
        if args.dump_trials:
            with open(args.dump_trials, "w", newline="") as fh:
                simulate.dump_trials(fh, prior, [strategy], trials, seed)
        _emit(out, fmt, summary, [
            f"prior                 {summary.prior}",
            f"strategy              {summary.strategy}",
            f"trials                {summary.trials}  (seed {summary.seed})",
            f"mean payoff           {summary.mean_payoff!r} +/- {summary.ci95_halfwidth!r} (95%, normal approx.)",
            f"sample variance       {summary.sample_variance!r}",
            f"mean realized gain    {summary.mean_switch_gain!r}",
            f"exact expected payoff {summary.exact_expected_payoff}",
        ])
        return EXIT_OK

    names = args.strategy or config.get("strategy") or ["always-switch", "never-switch"]
    if isinstance(names, str):
        names = [names]
    if len(names) == 1:
        names = [names[0], "never-switch"]
    if len(names) != 2:
        parser.error("compare takes at most two --strategy flags")
    a, b = (_parsed(parser, parse_strategy, n, "strategy") for n in names)
    summary = simulate.compare(prior, a, b, trials, seed, workers)
    if args.dump_trials:
        with open(args.dump_trials, "w", newline="") as fh:
            simulate.dump_trials(fh, prior, [a, b], trials, seed)
    _emit(out, fmt, summary, [
        f"prior                 {summary.prior}",
        f"strategies            {summary.strategy_a} minus {summary.strategy_b}",
        f"trials                {summary.trials}  (seed {summary.seed})",
        f"mean difference       {summary.mean_difference!r} +/- {summary.ci95_halfwidth!r} (95%, normal approx.)",
        f"trials that differ    {summary.nonzero_trials}",
        f"exact difference      {summary.exact_difference}",
    ])
    return EXIT_OK


def _asymmetry(pair: EnvelopePair, out, fmt: str) -> int:
    rows = []
    for role in (Role.SMALLER, Role.LARGER):
        seen = pair.smaller if role is Role.SMALLER else pair.larger
        other = pair.larger if role is Role.SMALLER else pair.smaller
        rows.append({
            "held": role.value,
            "observed": seen,
            "believed_other": beliefs.naive_switch_ev(seen),
            "actual_other": other,
            "error": beliefs.estimation_error(pair, role),
        })
    ratio = abs(rows[1]["error"]) / abs(rows[0]["error"])
    mean_error = analysis.role_averaged_error(pair)
    if fmt == "json":
        payload = {
            "pair": {"smaller": money_display(pair.smaller), "larger": money_display(pair.larger)},
            "rows": [{k: (v if isinstance(v, str) else money_display(v)) for k, v in r.items()}
                     for r in rows],
            "magnitude_ratio": str(ratio),
            "mean_error_in_x": str(mean_error),
        }
        out.write(json.dumps(payload, indent=2) + "\n")
        return EXIT_OK
    lines = [f"pair {pair}",
             f"{'held':<8} {'observed':>12} {'believed other':>15} {'actual other':>13} {'error':>12}"]
    for r in rows:
        lines.append(f"{r['held']:<8} {str(r['observed']):>12} {str(r['believed_other']):>15} "
                     f"{str(r['actual_other']):>13} {str(r['error']):>12}")
    lines.append(f"|error holding larger| / |error holding smaller| = {analysis.exact_decimal(ratio)}")
    lines.append(f"role-averaged error = {analysis.exact_decimal(mean_error)}X")
    out.write("\n".join(lines) + "\n")
    return EXIT_OK


def run() -> None:
    sys.exit(main())
