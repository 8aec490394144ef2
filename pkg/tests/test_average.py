from fractions import Fraction
from math import comb

import pytest
import sympy

from bmvfamily.average import (
    EXTRACTION_IDENTITIES,
    NEWTON10_TERMS,
    char_poly_data,
    coeff_extract_uvw,
    factored_elementary,
    gap,
    gap55_factor,
    gap55_formula,
    gap_sign_scan,
    p_newton,
    p_word_sum,
    power_sum_direct,
    power_sum_newton,
    r55_formula,
    ratio_leading,
    ratio_leading_exact,
    verify_newton10_hardcoded,
)
from bmvfamily.errors import ComplexityGuard, DegreeMismatch, RangeError
from bmvfamily.exact import BiPoly, Poly, bipoly_coeff

x = Poly.x()
R55 = Poly({4 + d: Fraction(c, 126) for d, c in enumerate([5, 1422, 1675, 3130, 4875, 5930, 4881])})


def test_p55_both_routes():
    assert p_word_sum(5, 5).p_poly == R55
    assert p_newton(5, 5).p_poly == R55
    assert R55 == r55_formula()
    assert R55.valuation() == (4, Fraction(5, 126))


def test_p11():
    assert p_word_sum(1, 1).p_poly == Poly({1: 2, 2: 1})
    assert p_newton(1, 1).p_poly == Poly({1: 2, 2: 1})


def test_p22_routes_agree():
    assert p_newton(2, 2).p_poly == p_word_sum(2, 2).p_poly


def test_threads_do_not_change_result():
    assert p_word_sum(5, 6, threads=3).p_poly == p_word_sum(5, 6).p_poly


def test_word_sum_cap():
    with pytest.raises(ComplexityGuard):
        p_word_sum(11, 10)
    assert p_word_sum(3, 3, max_length=6).word_count == 20


@pytest.mark.parametrize("total", range(2, 13))
def test_route_agreement_and_symmetry(total):
    for n in range(1, total):
        m = total - n
        p = p_word_sum(n, m).p_poly
        assert p == p_newton(n, m).p_poly
        assert p == p_newton(m, n).p_poly
        assert all(c >= 0 for c in p.terms.values())


@pytest.mark.parametrize("n, m", [(5, 5), (5, 6), (6, 5), (6, 6), (5, 7)])
def test_averaged_leading_term(n, m):
    assert p_word_sum(n, m).p_poly.valuation() == (4, Fraction(n + m, comb(n + m, n)))


def test_p65_newton_low_coefficient():
    assert p_newton(6, 5).p_poly.valuation() == (4, Fraction(11, 462))


def test_char_poly_data():
    cp = char_poly_data()
    t, s = BiPoly.t(), BiPoly.s()
    assert cp.e1 == (2 * x + 1) * (t + s)
    assert cp.e2 == 2 * x * (t * t + s * s) + (3 * x * x + 2 * x + 1) * t * s
    assert cp.e3 == x * (x + 1) * t * s * (t + s)
    assert (cp.e1, cp.e2, cp.e3) == factored_elementary()


def test_power_sums_examples():
    assert power_sum_newton(1) == char_poly_data().e1
    a10 = bipoly_coeff(power_sum_newton(10), 5, 5)
    assert a10 == Poly.monomial(4, 2) * Poly.from_coeffs([5, 1422, 1675, 3130, 4875, 5930, 4881])


@pytest.mark.parametrize("k", range(0, 13))
def test_power_sum_matches_matrix_power(k):
    assert power_sum_newton(k) == power_sum_direct(k)


def test_newton10_identity_against_sympy():
    e1, e2, e3, lam = sympy.symbols("e1 e2 e3 lam")
    # power sums of the roots of lam^3 - e1 lam^2 + e2 lam - e3 by sympy's own elimination
    r = sympy.symbols("r1:4")
    subs = {e1: sum(r), e2: r[0] * r[1] + r[0] * r[2] + r[1] * r[2], e3: r[0] * r[1] * r[2]}
    ours = sum(c * e1**p * e2**q * e3**s for c, p, q, s in NEWTON10_TERMS)
    assert sympy.expand(ours.subs(subs) - sum(ri**10 for ri in r)) == 0


@pytest.mark.parametrize(
    "abc, value", [((10, 0, 0), 252), ((8, 1, 0), 112), ((8, 0, 1), 70), ((0, 0, 5), 1)]
)
def test_coeff_extract_examples(abc, value):
    assert coeff_extract_uvw(*abc, 5, 5) == value


def test_coeff_extract_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        coeff_extract_uvw(1, 1, 1, 5, 5)


def test_coeff_extract_against_expansion():
    t, s = BiPoly.t(), BiPoly.s()
    u, v, w = t + s, t * t + s * s, t * s
    for a in range(15):
        for b in range(8):
            for c in range(8):
                total = a + 2 * b + 2 * c
                if total > 14:
                    continue
                expanded = (u**a) * (v**b) * (w**c)
                for n in range(total + 1):
                    assert Poly.const(coeff_extract_uvw(a, b, c, n, total - n)) == bipoly_coeff(expanded, n, total - n)


def test_extraction_identity_table_against_sympy():
    t, s, d, b, g = sympy.symbols("t s d b g")
    u, v, w = t + s, t**2 + s**2, t * s
    for (a, q, r), monomials in EXTRACTION_IDENTITIES.items():
        expr = sympy.expand(u**a * (d * v + b * w) ** q * (g * w) ** r)
        coeff = sympy.Poly(expr, t, s).coeff_monomial(t**5 * s**5)
        stated = sum(c * d**i * b**j * g**k for (i, j, k), c in monomials.items())
        assert sympy.expand(coeff - stated) == 0


def test_newton10_report_all_pass():
    checks = verify_newton10_hardcoded()
    assert len(checks) == 4 + 2 * 14 + 3
    assert all(c.passed for c in checks), [c.name for c in checks if not c.passed]


def test_gap_55():
    g = gap(5, 5)
    assert g == gap55_formula()
    assert g == Poly({5: 32, 10: 256}) - R55
    assert g.eval(Fraction(1, 1000)) < 0
    assert g.eval(0) == 0


def test_gap_11_vanishes():
    assert gap(1, 1).is_zero()


def _oracle_root_bracket(lo, hi, width):
    """Plain bisection of 5475x^6 - 1186x^5 - 975x^4 - 626x^3 - 335x^2 + 522x - 1."""
    coeffs = [5475, -1186, -975, -626, -335, 522, -1]

    def f(z):
        acc = Fraction(0)
        for c in coeffs:
            acc = acc * z + c
        return acc

    assert f(lo) < 0 < f(hi)
    while hi - lo > width:
        mid = (lo + hi) / 2
        lo, hi = (mid, hi) if f(mid) < 0 else (lo, mid)
    return lo, hi


def test_sign_scan_55():
    scan = gap_sign_scan(5, 5, Fraction(0), Fraction(1, 10), 100)
    signs = [s for _, s in scan.points]
    assert signs[0] == 0
    assert signs[1] == -1
    assert signs[-1] == 1
    first_plus = signs.index(1)
    assert all(s == -1 for s in signs[1:first_plus]) and all(s == 1 for s in signs[first_plus:])
    (bracket,) = scan.brackets
    assert bracket.width <= Fraction(1, 10**9)
    assert bracket.hi < Fraction(1, 100)
    lo, hi = _oracle_root_bracket(Fraction(1, 1000), Fraction(1, 100), Fraction(1, 10**12))
    assert bracket.lo <= lo and hi <= bracket.hi
    assert gap55_factor().eval(bracket.lo) < 0 < gap55_factor().eval(bracket.hi)


def test_sign_scan_validation():
    with pytest.raises(RangeError):
        gap_sign_scan(5, 5, Fraction(1), Fraction(0), 10)
    with pytest.raises(RangeError):
        gap_sign_scan(5, 5, Fraction(0), Fraction(1), 0)


@pytest.mark.parametrize(
    "n, m, expected",
    [(5, 5, (-1, Fraction(5, 4032))), (5, 6, (-1, Fraction(1, 672))), (6, 6, (-2, Fraction(12, 64 * 924)))],
)
def test_ratio_leading(n, m, expected):
    assert ratio_leading(n, m) == expected
    assert ratio_leading_exact(n, m) == expected


def test_ratio_range_error():
    with pytest.raises(RangeError):
        ratio_leading(4, 7)


def test_ensemble_json():
    obj = p_newton(1, 1).to_json()
    assert obj == {"n": 1, "m": 1, "method": "newton", "word_count": 2,
                   "p": {"var": "x", "terms": [[1, "2/1"], [2, "1/1"]]}}
