"""Command-line entry point: ``bmv <command> [options]``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any

from . import asymptotics as asy
from . import average as avg
from .errors import BMVError
from .exact import Poly, format_rational, parse_rational
from .report import Report, check, to_jsonable
from .verify import SECTIONS, run_section, trace_report
from .words import parse_word


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json", "csv"], default="text")
    common.add_argument("--out", type=Path, default=None, help="write output to this file")
    common.add_argument(
        "--max-words",
        type=int,
        default=avg.DEFAULT_MAX_WORD_LENGTH,
        help="largest word length n+m for exhaustive word sums",
    )
    common.add_argument("--max-runs", type=int, default=None, help="cap on runs r for walk/bridge searches")
    common.add_argument("--threads", type=int, default=1)
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(prog="bmv", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("trace", parents=[common], help="exact trace of a word")
    p.add_argument("--word", required=True)

    p = sub.add_parser("kappa", parents=[common], help="leading small-x exponent of a word")
    p.add_argument("--word", required=True)
    p.add_argument("--method", choices=["all", "brute", "walks", "bridge"], default="all")

    p = sub.add_parser("verify", parents=[common], help="run a reproduction suite")
    p.add_argument("--section", choices=sorted(SECTIONS) + ["all"], default="all")
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--m", type=int, default=5)

    p = sub.add_parser("classify", parents=[common], help="alias for verify --section classification")
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--m", type=int, default=5)

    p = sub.add_parser("average", parents=[common], help="word-ensemble average p_{n,m}")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--method", choices=["sum", "newton", "both"], default="both")

    p = sub.add_parser("scan", parents=[common], help="exact sign scan of tr(A^n B^m) - p_{n,m}")
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--m", type=int, default=5)
    p.add_argument("--x-lo", type=parse_rational, default=parse_rational("0"))
    p.add_argument("--x-hi", type=parse_rational, default=parse_rational("1/10"))
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--with-values", action="store_true", help="add exact gap and ratio columns to the CSV")
    return parser


# -- commands --------------------------------------------------------------


def cmd_trace(args) -> Report:
    return trace_report(args.word)


def cmd_kappa(args) -> Report:
    w = parse_word(args.word)
    report = Report("kappa", {"word": str(w), "method": args.method})
    walk_cap = args.max_runs or asy.DEFAULT_MAX_WALK_RUNS
    bridge_cap = args.max_runs or asy.DEFAULT_MAX_BRIDGE_RUNS
    runners = {
        "brute": lambda: asy.kappa_brute(w),
        "walks": lambda: asy.kappa_walks(w, walk_cap),
        "bridge": lambda: asy.kappa_bridge(w, bridge_cap),
    }
    chosen = list(runners) if args.method == "all" else [args.method]
    results = {name: runners[name]() for name in chosen}
    report.results["run_form"] = asy.run_decomposition(w)
    report.results.update(results)
    if len(results) > 1:
        kappas = {r.kappa for r in results.values()}
        report.checks.append(check("methods agree on kappa", 1, len(kappas)))
        leads = {r.leading_coefficient for r in results.values() if r.leading_coefficient is not None}
        report.checks.append(check("methods agree on leading coefficient", 1, len(leads)))
    return report


def cmd_verify(args) -> Report:
    caps = {"max_runs": args.max_runs, "max_words": args.max_words, "threads": args.threads}
    if args.section in ("classification", "average"):
        return run_section(args.section, n=args.n, m=args.m, **caps)
    return run_section(args.section, **caps)


def cmd_classify(args) -> Report:
    args.section = "classification"
    return cmd_verify(args)


def cmd_average(args) -> Report:
    report = Report("average", {"n": args.n, "m": args.m, "method": args.method})
    if args.method in ("sum", "both"):
        report.results["word_sum"] = avg.p_word_sum(args.n, args.m, args.max_words, args.threads)
    if args.method in ("newton", "both"):
        report.results["newton"] = avg.p_newton(args.n, args.m)
    if args.method == "both":
        report.checks.append(
            check("word sum = Newton route", report.results["word_sum"].p_poly, report.results["newton"].p_poly)
        )
    p = next(iter(report.results.values())).p_poly
    report.results["valuation"] = list(p.valuation())
    return report


def cmd_scan(args) -> Report:
    report = Report(
        "scan",
        {"n": args.n, "m": args.m, "x_lo": args.x_lo, "x_hi": args.x_hi, "steps": args.steps},
    )
    g = avg.gap(args.n, args.m, args.max_words)
    scan = avg.gap_sign_scan(args.n, args.m, args.x_lo, args.x_hi, args.steps, gap_poly=g)
    report.results["gap"] = g
    report.results["scan"] = scan
    for b in scan.brackets:
        report.checks.append(check("bracket width <= 1e-9", True, b.width <= Fraction(1, 10**9)))
        report.checks.append(check("bracket endpoints have opposite signs", True, b.sign_lo * b.sign_hi <= 0))
    return report


COMMANDS = {
    "trace": cmd_trace,
    "kappa": cmd_kappa,
    "verify": cmd_verify,
    "classify": cmd_classify,
    "average": cmd_average,
    "scan": cmd_scan,
}


# -- rendering -------------------------------------------------------------


def scan_csv(report: Report, with_values: bool = False) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = ["x_num", "x_den", "sign"]
    if with_values:
        header += ["gap", "ratio"]
        g = report.results["gap"]
        n, m = report.inputs["n"], report.inputs["m"]
        clustered = avg.clustered_trace_closed(n, m)
    writer.writerow(header)
    for x, s in report.results["scan"].points:
        row: list[Any] = [x.numerator, x.denominator, s]
        if with_values:
            denom = clustered.eval(x)
            ratio = "" if denom == 0 else format_rational((denom - g.eval(x)) / denom)
            row += [format_rational(g.eval(x)), ratio]
        writer.writerow(row)
    return buf.getvalue()


def _csv(report: Report, args) -> str:
    if report.command == "scan":
        return scan_csv(report, args.with_values)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if report.command == "trace":
        writer.writerow(["degree", "coefficient"])
        for d, c in report.results["trace"].items():
            writer.writerow([d, format_rational(c)])
        return buf.getvalue()
    if report.command == "average":
        writer.writerow(["method", "degree", "coefficient"])
        for key in ("word_sum", "newton"):
            if key in report.results:
                for d, c in report.results[key].p_poly.items():
                    writer.writerow([key, d, format_rational(c)])
        return buf.getvalue()
    writer.writerow(["name", "expected", "actual", "pass"])
    for c in report.checks:
        writer.writerow([c.name, json.dumps(to_jsonable(c.expected)), json.dumps(to_jsonable(c.actual)), c.passed])
    return buf.getvalue()


def _text_value(value: Any) -> str:
    if isinstance(value, (str, int, Poly, Fraction)):
        return str(value)
    if hasattr(value, "p_poly"):
        return str(value.p_poly)
    if isinstance(value, asy.KappaResult):
        lead = "-" if value.leading_coefficient is None else str(value.leading_coefficient)
        lines = [f"kappa={value.kappa} leading={lead} minimizers={len(value.minimizers)}"]
        lines += [f"    {json.dumps(mz.to_json())}" for mz in value.minimizers]
        return "\n".join(lines)
    if isinstance(value, avg.GapScan):
        signs = "".join({-1: "-", 0: "0", 1: "+"}[s] for _, s in value.points)
        lines = [f"signs {signs}"]
        lines += [f"    sign change in [{b.lo}, {b.hi}]" for b in value.brackets]
        return "\n".join(lines)
    if isinstance(value, (list, tuple)):
        return ", ".join(_text_value(v) for v in value)
    return json.dumps(to_jsonable(value))


def _text(report: Report) -> str:
    lines = [f"{report.command}: " + ", ".join(f"{k}={to_jsonable(v)}" for k, v in report.inputs.items())]
    for key, value in report.results.items():
        lines.append(f"  {key}: {_text_value(value)}")
    for c in report.checks:
        status = "PASS" if c.passed else "FAIL"
        lines.append(f"  [{status}] {c.name}")
        if not c.passed:
            lines.append(f"         expected {json.dumps(to_jsonable(c.expected))}")
            lines.append(f"         actual   {json.dumps(to_jsonable(c.actual))}")
    if report.checks:
        passed = sum(c.passed for c in report.checks)
        lines.append(f"  {passed}/{len(report.checks)} checks passed")
    return "\n".join(lines) + "\n"


def render(report: Report, args) -> str:
    if args.format == "json":
        return json.dumps(report.to_json(), indent=2) + "\n"
    if args.format == "csv":
        return _csv(report, args)
    return _text(report)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = COMMANDS[args.command](args)
    except BMVError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = render(report, args)
    if args.command == "scan" and args.out is not None:
        args.out.write_text(scan_csv(report, args.with_values))
        sys.stdout.write(_text(report) if args.format == "text" else text)
    elif args.out is not None:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
