"""Reproduction suites: each section returns a Report of exact checks."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

from . import asymptotics as asy
from . import average as avg
from .exact import Poly
from .family import (
    Mat3,
    clustered_trace_closed,
    clustered_trace_direct,
    commutator,
    commutator_frobenius_sq,
    verify_normal_form,
)
from .report import Check, Report, check, sign_check
from .words import parse_word, word_trace

BENCHMARK_WORDS = (
    # word, kappa, leading coefficient
    ("A^5 B^5", 5, Fraction(32)),
    ("A^3 B A B^3 A B", 4, Fraction(1)),
    ("ABABABABAB", 5, Fraction(2)),
)


def section_normal_form(**_) -> Report:
    report = Report("verify", {"section": "normal-form"})
    report.extend(verify_normal_form())
    return report


def section_clustered(max_exponent: int = 8, **_) -> Report:
    report = Report("verify", {"section": "clustered", "max_exponent": max_exponent})
    mismatches = [
        (n, m)
        for n in range(1, max_exponent + 1)
        for m in range(1, max_exponent + 1)
        if clustered_trace_closed(n, m) != clustered_trace_direct(n, m)
    ]
    report.checks.append(check(f"closed form = direct product, 1 <= n,m <= {max_exponent}", [], mismatches))
    report.checks.append(
        check("tr(A^5 B^5)", Poly({5: 32, 10: 256}), clustered_trace_closed(5, 5))
    )
    return report


def section_table1(max_runs: int | None = None, **_) -> Report:
    report = Report("verify", {"section": "table1"})
    rows = []
    walk_cap = max_runs or asy.DEFAULT_MAX_WALK_RUNS
    for text, kappa, lead in BENCHMARK_WORDS:
        w = parse_word(text)
        brute = asy.kappa_brute(w)
        walks = asy.kappa_walks(w, walk_cap)
        bridge = asy.kappa_bridge(w)
        rows.append(
            {"word": text, "r": asy.run_decomposition(w).r, "kappa": brute.kappa, "leading": brute.leading_coefficient}
        )
        report.checks += [
            check(f"{text}: kappa (brute)", kappa, brute.kappa),
            check(f"{text}: kappa (walks)", kappa, walks.kappa),
            check(f"{text}: kappa (bridge)", kappa, bridge.kappa),
            check(f"{text}: leading coefficient (brute)", lead, brute.leading_coefficient),
            check(f"{text}: leading coefficient (walks)", lead, walks.leading_coefficient),
        ]
    report.results["table"] = rows
    return report


def section_classification(n: int = 5, m: int = 5, **_) -> Report:
    report = Report("verify", {"section": "classification", "n": n, "m": m})
    sweep = asy.sweep_kappa(n, m)
    report.results["classification"] = sweep
    expected = asy.expected_order4(n, m)
    low = min(sweep.kappa_histogram)
    report.checks += [
        check("min kappa >= 4", True, low >= 4),
        check("kappa = 4 words are the cyclic shifts of the bridge word", [str(w) for w in expected], [str(w) for w in sweep.order4]),
        check("number of kappa = 4 words", n + m, len(sweep.order4)),
        check("words with kappa >= 5", sweep.total - (n + m), sum(c for k, c in sweep.kappa_histogram.items() if k >= 5)),
    ]
    return report


def section_average(n: int = 5, m: int = 5, max_words: int | None = None, threads: int = 1, **_) -> Report:
    report = Report("verify", {"section": "average", "n": n, "m": m})
    cap = max_words or avg.DEFAULT_MAX_WORD_LENGTH
    by_sum = avg.p_word_sum(n, m, cap, threads)
    by_newton = avg.p_newton(n, m)
    report.results["word_sum"] = by_sum
    report.results["newton"] = by_newton
    report.checks.append(check("word sum = Newton route", by_sum.p_poly, by_newton.p_poly))
    if (n, m) == (5, 5):
        report.checks.append(check("p_55 closed form", avg.r55_formula(), by_sum.p_poly))
    if min(n, m) >= 5:
        report.checks.append(
            check("leading term (n+m)/C(n+m,n) x^4", (4, Fraction(n + m, by_sum.word_count)), by_sum.p_poly.valuation())
        )
    return report


def section_appendix(threads: int = 1, **_) -> Report:
    report = Report("verify", {"section": "appendix"})
    report.extend(avg.verify_newton10_hardcoded())
    report.extend(section_average(5, 5, threads=threads).checks)
    report.extend(section_counterexample().checks)
    return report


def section_counterexample(**_) -> Report:
    report = Report("verify", {"section": "counterexample"})
    g = avg.gap(5, 5)
    scan = avg.gap_sign_scan(5, 5, Fraction(0), Fraction(1, 10), 100, gap_poly=g)
    report.results["gap"] = g
    report.results["brackets"] = list(scan.brackets)
    report.checks += [
        check("L - R = (5x^4/126)(5475x^6 - ... - 1)", avg.gap55_formula(), g),
        sign_check("sign of L - R at x = 1/1000", -1, g.eval(Fraction(1, 1000))),
        check("one sign change on (0, 1/10]", 1, len(scan.brackets)),
    ]
    for b in scan.brackets:
        report.checks.append(check("bracket width <= 1e-9", True, b.width <= Fraction(1, 10**9)))
        report.checks.append(check("bracket signs (-, +)", (-1, 1), (b.sign_lo, b.sign_hi)))
    return report


def section_ratio(pairs=((5, 5), (5, 6), (6, 6)), **_) -> Report:
    report = Report("verify", {"section": "ratio"})
    rows = []
    for n, m in pairs:
        formula = avg.ratio_leading(n, m)
        exact = avg.ratio_leading_exact(n, m)
        rows.append({"n": n, "m": m, "exponent": formula[0], "coefficient": formula[1]})
        report.checks.append(check(f"({n},{m}) ratio leading term", formula, exact))
    report.checks.append(check("(5,5) ratio = (5/4032) / x", (-1, Fraction(5, 4032)), avg.ratio_leading_exact(5, 5)))
    report.results["ratio"] = rows
    return report


def section_commutator(**_) -> Report:
    report = Report("verify", {"section": "commutator"})
    x = Poly.x()
    displayed = Mat3(
        [
            [Poly(), x * (x - 1), -(x * x)],
            [x * (1 - x), Poly(), x * (x - 1)],
            [x * x, x * (1 - x), Poly()],
        ]
    )
    report.checks += [
        check("[A, B] matches the displayed matrix", displayed, commutator()),
        check("||[A,B]||_F^2 = 4x^2(1-x)^2 + 2x^4", 4 * x * x * (1 - x) * (1 - x) + 2 * x**4, commutator_frobenius_sq()),
    ]
    return report


SECTIONS: dict[str, Callable[..., Report]] = {
    "normal-form": section_normal_form,
    "clustered": section_clustered,
    "table1": section_table1,
    "classification": section_classification,
    "average": section_average,
    "appendix": section_appendix,
    "counterexample": section_counterexample,
    "ratio": section_ratio,
    "commutator": section_commutator,
}


def run_section(name: str, **kwargs) -> Report:
    if name == "all":
        report = Report("verify", {"section": "all"})
        subs = []
        for key, fn in SECTIONS.items():
            if key == "classification":
                subs += [(f"{key} {n},{m}", fn(n=n, m=m)) for n, m in ((5, 5), (5, 6), (6, 6))]
            else:
                subs.append((key, fn(**kwargs)))
        for key, sub in subs:
            report.results[key] = {"checks": len(sub.checks), "ok": sub.ok}
            report.checks += [Check(f"[{key}] {c.name}", c.expected, c.actual, c.passed) for c in sub.checks]
        return report
    if name not in SECTIONS:
        raise KeyError(f"unknown section {name!r}")
    return SECTIONS[name](**kwargs)


def trace_report(text: str) -> Report:
    w = parse_word(text)
    p = word_trace(w)
    report = Report("trace", {"word": str(w)})
    report.results["trace"] = p
    report.results["valuation"] = None if p.is_zero() else list(p.valuation())
    return report
