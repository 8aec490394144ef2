"""Word-ensemble averages p_{n,m}(A_x, B_x) and the clustered/average gap.

Two independent routes compute the average:

* ``p_word_sum`` averages the exact trace over every word;
* ``p_newton`` extracts [t^n s^m] tr(tA + sB)^(n+m) using power sums
  generated from the characteristic polynomial of M = tA + sB.

The hardcoded degree-10 Newton identity and the fourteen [t^5 s^5]
extraction identities for n = m = 5 are kept here as data and checked by
:func:`verify_newton10_hardcoded`.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Optional

from .errors import ComplexityGuard, DegreeMismatch, InvalidExponent, RangeError
from .exact import ZERO, BiPoly, Poly, bipoly_coeff
from .family import Mat3, build_family, clustered_trace_closed
from .report import Check, check
from .words import enumerate_words, word_count, word_trace

DEFAULT_MAX_WORD_LENGTH = 20


@dataclass(frozen=True)
class EnsembleResult:
    n: int
    m: int
    p_poly: Poly
    method: str
    word_count: int

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "method": self.method,
            "word_count": self.word_count,
            "p": self.p_poly.to_json(),
        }


def _check_nm(n: int, m: int) -> None:
    if n < 1 or m < 1:
        raise InvalidExponent(f"need n, m >= 1, got ({n}, {m})")


def _partial_trace_sum(n: int, m: int, part: int, parts: int) -> dict[int, int]:
    total: dict[int, int] = {}
    for w in enumerate_words(n, m, part, parts):
        for d, c in word_trace(w).items():
            total[d] = total.get(d, 0) + int(c)
    return total


def p_word_sum(
    n: int, m: int, max_length: int = DEFAULT_MAX_WORD_LENGTH, threads: int = 1
) -> EnsembleResult:
    """Exact average of tr W over all words with n A's and m B's."""
    _check_nm(n, m)
    if n + m > max_length:
        raise ComplexityGuard(f"n + m = {n + m} exceeds word-sum cap {max_length}")
    count = word_count(n, m)
    parts = max(1, min(threads, count))
    if parts == 1:
        partials = [_partial_trace_sum(n, m, 0, 1)]
    else:
        with ProcessPoolExecutor(max_workers=parts) as pool:
            partials = list(
                pool.map(_partial_trace_sum, [n] * parts, [m] * parts, range(parts), [parts] * parts)
            )
    total: dict[int, int] = {}
    for partial in partials:
        for d, c in partial.items():
            total[d] = total.get(d, 0) + c
    p = Poly({d: Fraction(c, count) for d, c in total.items()})
    return EnsembleResult(n, m, p, "word_sum", count)


# -- characteristic polynomial and power sums ------------------------------

T = BiPoly.t()
S = BiPoly.s()
X = Poly.x()

ALPHA = 2 * X + 1
BETA = 3 * X * X + 2 * X + 1
DELTA = 2 * X
GAMMA = X * (X + 1)

U_SYM = T + S
V_SYM = T * T + S * S
W_SYM = T * S


@dataclass(frozen=True)
class CharPolyData:
    e1: BiPoly
    e2: BiPoly
    e3: BiPoly
    alpha: Poly
    beta: Poly
    delta: Poly
    gamma: Poly


def pencil_matrix() -> Mat3:
    """M = t A_x + s B_x with BiPoly entries."""
    A, B = build_family()
    return Mat3(
        [[T * a + S * b for a, b in zip(ra, rb)] for ra, rb in zip(A.rows, B.rows)]
    )


def _elementary(M: Mat3) -> tuple[BiPoly, BiPoly, BiPoly]:
    r = M.rows
    e1 = r[0][0] + r[1][1] + r[2][2]
    e2 = (
        (r[0][0] * r[1][1] - r[0][1] * r[1][0])
        + (r[0][0] * r[2][2] - r[0][2] * r[2][0])
        + (r[1][1] * r[2][2] - r[1][2] * r[2][1])
    )
    return e1, e2, M.det()


@lru_cache(maxsize=1)
def char_poly_data() -> CharPolyData:
    e1, e2, e3 = _elementary(pencil_matrix())
    return CharPolyData(e1, e2, e3, ALPHA, BETA, DELTA, GAMMA)


def factored_elementary() -> tuple[BiPoly, BiPoly, BiPoly]:
    """(alpha u, delta v + beta w, gamma u w) built from the closed forms."""
    return ALPHA * U_SYM, DELTA * V_SYM + BETA * W_SYM, GAMMA * U_SYM * W_SYM


@lru_cache(maxsize=None)
def power_sum_newton(k: int) -> BiPoly:
    """tr(M^k) by the recurrence a_k = e1 a_{k-1} - e2 a_{k-2} + e3 a_{k-3}."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    cp = char_poly_data()
    if k == 0:
        return BiPoly.const(3)
    if k == 1:
        return cp.e1
    if k == 2:
        return cp.e1 * cp.e1 - 2 * cp.e2
    return (
        cp.e1 * power_sum_newton(k - 1)
        - cp.e2 * power_sum_newton(k - 2)
        + cp.e3 * power_sum_newton(k - 3)
    )


def power_sum_direct(k: int) -> BiPoly:
    """tr(M^k) by repeated 3x3 multiplication."""
    M = pencil_matrix()
    one, zero = BiPoly.const(1), BiPoly()
    acc = Mat3([[one if i == j else zero for j in range(3)] for i in range(3)])
    for _ in range(k):
        acc = acc @ M
    return acc.trace()


def p_newton(n: int, m: int) -> EnsembleResult:
    _check_nm(n, m)
    count = comb(n + m, n)
    top = bipoly_coeff(power_sum_newton(n + m), n, m)
    return EnsembleResult(n, m, top.scale(Fraction(1, count)), "newton", count)


def coeff_extract_uvw(a: int, b: int, c: int, n: int, m: int) -> int:
    """[t^n s^m] u^a v^b w^c = sum_j C(b, j) C(a, n - c - 2j)."""
    if min(a, b, c) < 0:
        raise ValueError("exponents must be nonnegative")
    if a + 2 * b + 2 * c != n + m:
        raise DegreeMismatch(f"a + 2b + 2c = {a + 2 * b + 2 * c} != n + m = {n + m}")

    def binom(top: int, k: int) -> int:
        return comb(top, k) if 0 <= k <= top else 0

    return sum(comb(b, j) * binom(a, n - c - 2 * j) for j in range(b + 1))


# -- hardcoded n = m = 5 identities ----------------------------------------

# a_10 = sum coeff * e1^p e2^q e3^r, as (coeff, p, q, r).
NEWTON10_TERMS: tuple[tuple[int, int, int, int], ...] = (
    (1, 10, 0, 0),
    (-10, 8, 1, 0),
    (10, 7, 0, 1),
    (35, 6, 2, 0),
    (-60, 5, 1, 1),
    (-50, 4, 3, 0),
    (25, 4, 0, 2),
    (100, 3, 2, 1),
    (25, 2, 4, 0),
    (-60, 2, 1, 2),
    (-40, 1, 3, 1),
    (10, 1, 0, 3),
    (-2, 0, 5, 0),
    (15, 0, 2, 2),
)

# [t^5 s^5] u^a (delta v + beta w)^q (gamma w)^r, keyed by (a, q, r);
# values map (deg delta, deg beta, deg gamma) -> integer coefficient.
EXTRACTION_IDENTITIES: dict[tuple[int, int, int], dict[tuple[int, int, int], int]] = {
    (10, 0, 0): {(0, 0, 0): 252},
    (8, 1, 0): {(1, 0, 0): 112, (0, 1, 0): 70},
    (8, 0, 1): {(0, 0, 1): 70},
    (6, 2, 0): {(2, 0, 0): 52, (1, 1, 0): 60, (0, 2, 0): 20},
    (6, 1, 1): {(1, 0, 1): 30, (0, 1, 1): 20},
    (4, 3, 0): {(3, 0, 0): 24, (2, 1, 0): 42, (1, 2, 0): 24, (0, 3, 0): 6},
    (6, 0, 2): {(0, 0, 2): 20},
    (4, 2, 1): {(2, 0, 1): 14, (1, 1, 1): 16, (0, 2, 1): 6},
    (2, 4, 0): {(4, 0, 0): 12, (3, 1, 0): 24, (2, 2, 0): 24, (1, 3, 0): 8, (0, 4, 0): 2},
    (4, 1, 2): {(1, 0, 2): 8, (0, 1, 2): 6},
    (2, 3, 1): {(3, 0, 1): 6, (2, 1, 1): 12, (1, 2, 1): 6, (0, 3, 1): 2},
    (4, 0, 3): {(0, 0, 3): 6},
    (0, 5, 0): {(4, 1, 0): 30, (2, 3, 0): 20, (0, 5, 0): 1},
    (2, 2, 2): {(2, 0, 2): 4, (1, 1, 2): 4, (0, 2, 2): 2},
}

# 252 R(x) / (2 x^4), ascending in x.
R55_BRACKET = (5, 1422, 1675, 3130, 4875, 5930, 4881)
# (L - R) * 126 / (5 x^4), ascending in x.
GAP55_BRACKET = (-1, 522, -335, -626, -975, -1186, 5475)


def r55_formula() -> Poly:
    return Poly.monomial(4, Fraction(1, 126)) * Poly.from_coeffs(R55_BRACKET)


def a10_t5s5_formula() -> Poly:
    return Poly.monomial(4, 2) * Poly.from_coeffs(R55_BRACKET)


def gap55_formula() -> Poly:
    return Poly.monomial(4, Fraction(5, 126)) * Poly.from_coeffs(GAP55_BRACKET)


def gap55_factor() -> Poly:
    return Poly.from_coeffs(GAP55_BRACKET)


def newton10_hardcoded() -> BiPoly:
    cp = char_poly_data()
    total = BiPoly()
    for coeff, p, q, r in NEWTON10_TERMS:
        total = total + coeff * (cp.e1**p) * (cp.e2**q) * (cp.e3**r)
    return total


def extraction_by_formula(a: int, q: int, r: int, n: int = 5, m: int = 5) -> dict[tuple[int, int, int], int]:
    """Monomial coefficients of [t^n s^m] u^a (delta v + beta w)^q (gamma w)^r."""
    out: dict[tuple[int, int, int], int] = {}
    for i in range(q + 1):
        c = comb(q, i) * coeff_extract_uvw(a, i, q - i + r, n, m)
        if c:
            out[(i, q - i, r)] = c
    return out


def _substitute(monomials: dict[tuple[int, int, int], int]) -> Poly:
    total = ZERO
    for (i, j, k), c in monomials.items():
        total = total + c * (DELTA**i) * (BETA**j) * (GAMMA**k)
    return total


def extraction_by_expansion(a: int, q: int, r: int) -> Poly:
    """[t^5 s^5] of the fully expanded BiPoly with delta, beta, gamma substituted."""
    expr = (U_SYM**a) * ((DELTA * V_SYM + BETA * W_SYM) ** q) * ((GAMMA * W_SYM) ** r)
    return bipoly_coeff(expr, 5, 5)


def assembled_a10_coefficient() -> Poly:
    """[t^5 s^5] a_10 assembled from the hardcoded terms and identities."""
    total = ZERO
    for coeff, p, q, r in NEWTON10_TERMS:
        total = total + coeff * (ALPHA**p) * _substitute(EXTRACTION_IDENTITIES[(p + r, q, r)])
    return total


def verify_newton10_hardcoded() -> list[Check]:
    cp = char_poly_data()
    f1, f2, f3 = factored_elementary()
    checks = [
        check("e1 = (2x+1)(t+s)", f1, cp.e1),
        check("e2 = 2x(t^2+s^2) + (3x^2+2x+1)ts", f2, cp.e2),
        check("e3 = x(x+1)ts(t+s)", f3, cp.e3),
        check("hardcoded degree-10 Newton identity = recurrence a_10", power_sum_newton(10), newton10_hardcoded()),
    ]
    for (a, q, r), expected in EXTRACTION_IDENTITIES.items():
        label = f"[t^5 s^5] u^{a} (dv+bw)^{q} (gw)^{r}"
        checks.append(check(label + " monomials", expected, extraction_by_formula(a, q, r)))
        checks.append(check(label + " expanded", _substitute(expected), extraction_by_expansion(a, q, r)))
    a10 = bipoly_coeff(power_sum_newton(10), 5, 5)
    checks.append(check("assembled coefficient = [t^5 s^5] a_10", a10, assembled_a10_coefficient()))
    checks.append(check("[t^5 s^5] a_10 = 2x^4(4881x^6 + ... + 5)", a10_t5s5_formula(), a10))
    checks.append(check("R(x) = p_55 closed form", r55_formula(), p_newton(5, 5).p_poly))
    return checks


# -- gap, sign scan, ratio -------------------------------------------------


@lru_cache(maxsize=None)
def gap(n: int, m: int, max_length: int = DEFAULT_MAX_WORD_LENGTH) -> Poly:
    """tr(A^n B^m) - p_{n,m}; both averaging routes must agree when affordable."""
    _check_nm(n, m)
    p = p_newton(n, m).p_poly
    if n + m <= max_length:
        p_sum = p_word_sum(n, m, max_length).p_poly
        if p_sum != p:
            raise ArithmeticError(f"averaging routes disagree at ({n}, {m})")
    return clustered_trace_closed(n, m) - p


def _sign(v: Fraction) -> int:
    return (v > 0) - (v < 0)


@dataclass(frozen=True)
class SignBracket:
    lo: Fraction
    hi: Fraction
    sign_lo: int
    sign_hi: int

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def to_json(self) -> dict:
        return {
            "lo": f"{self.lo.numerator}/{self.lo.denominator}",
            "hi": f"{self.hi.numerator}/{self.hi.denominator}",
            "sign_lo": self.sign_lo,
            "sign_hi": self.sign_hi,
        }


@dataclass(frozen=True)
class GapScan:
    n: int
    m: int
    points: tuple[tuple[Fraction, int], ...]
    brackets: tuple[SignBracket, ...]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "points": [[f"{x.numerator}/{x.denominator}", s] for x, s in self.points],
            "brackets": [b.to_json() for b in self.brackets],
        }


def bisect_sign_change(
    p: Poly, lo: Fraction, hi: Fraction, width: Fraction = Fraction(1, 10**9)
) -> SignBracket:
    """Shrink [lo, hi] with p(lo), p(hi) of opposite sign to width <= ``width``."""
    s_lo, s_hi = _sign(p.eval(lo)), _sign(p.eval(hi))
    if s_lo * s_hi >= 0:
        raise ValueError("endpoints must have strictly opposite signs")
    while hi - lo > width:
        mid = (lo + hi) / 2
        s_mid = _sign(p.eval(mid))
        if s_mid == 0:
            return SignBracket(mid, mid, 0, 0)
        if s_mid == s_lo:
            lo = mid
        else:
            hi = mid
    return SignBracket(lo, hi, s_lo, s_hi)


def gap_sign_scan(
    n: int,
    m: int,
    x_lo: Fraction,
    x_hi: Fraction,
    steps: int,
    width: Fraction = Fraction(1, 10**9),
    gap_poly: Optional[Poly] = None,
) -> GapScan:
    """Exact sign of the gap on a uniform grid, with bisected sign changes."""
    x_lo, x_hi = Fraction(x_lo), Fraction(x_hi)
    if not 0 <= x_lo < x_hi:
        raise RangeError("need 0 <= x_lo < x_hi")
    if steps < 1:
        raise RangeError("steps must be >= 1")
    g = gap_poly if gap_poly is not None else gap(n, m)
    h = (x_hi - x_lo) / steps
    points = tuple((x, _sign(g.eval(x))) for x in (x_lo + k * h for k in range(steps + 1)))
    brackets = []
    last: Optional[tuple[Fraction, int]] = None
    for x, s in points:
        if s == 0:
            continue
        if last is not None and last[1] != s:
            brackets.append(bisect_sign_change(g, last[0], x, width))
        last = (x, s)
    return GapScan(n, m, points, tuple(brackets))


def ratio_leading(n: int, m: int) -> tuple[int, Fraction]:
    """Leading (exponent, coefficient) of p_{n,m} / tr(A^n B^m) from the closed form."""
    if min(n, m) < 5:
        raise RangeError(f"ratio asymptotics need n, m >= 5, got ({n}, {m})")
    ell = min(n, m)
    d = 2**ell if n == m else 2 ** (ell - 1)
    return 4 - ell, Fraction(n + m, d * comb(n + m, n))


def ratio_leading_exact(n: int, m: int) -> tuple[int, Fraction]:
    """Same quantity from valuations of the exact numerator and denominator."""
    _check_nm(n, m)
    vp, cp = p_newton(n, m).p_poly.valuation()
    vd, cd = clustered_trace_closed(n, m).valuation()
    return vp - vd, cp / cd
