from fractions import Fraction
from itertools import combinations, product
from math import comb

import pytest

from bmvfamily.asymptotics import (
    _nonzero_walk_traces,
    bridge_word,
    classify_order4,
    expected_order4,
    gamma_of,
    kappa_bridge,
    kappa_brute,
    kappa_walks,
    sweep_kappa,
    walk_expansion,
    walk_sum,
)
from bmvfamily.errors import ComplexityGuard, RangeError, SingleLetterWord
from bmvfamily.family import build_projections
from bmvfamily.words import RunForm, Word, cyclic_shifts, parse_word, run_decomposition, word_trace

from conftest import words_up_to

BRIDGE55 = parse_word("A^3 B A B^3 A B")


@pytest.mark.parametrize(
    "text, kappa, lead",
    [("A^5 B^5", 5, 32), ("A^3 B A B^3 A B", 4, 1), ("ABABABABAB", 5, 2)],
)
def test_benchmark_words(text, kappa, lead):
    w = parse_word(text)
    for result in (kappa_brute(w), kappa_walks(w)):
        assert (result.kappa, result.leading_coefficient) == (kappa, lead)
    assert kappa_bridge(w).kappa == kappa
    assert kappa_bridge(w).leading_coefficient is None


def test_single_letter_words_rejected():
    for fn in (kappa_brute, kappa_walks, walk_expansion):
        with pytest.raises(SingleLetterWord):
            fn(Word("AAAA"))


def test_walk_expansion_AB():
    walks = walk_expansion(Word("AB"))
    got = {("".join(wa.sigma), "".join(wa.tau)): (wa.weight, wa.trace_value) for wa in walks}
    assert got == {
        ("P", "V"): (1, Fraction(1, 2)),
        ("U", "Q"): (1, Fraction(1, 2)),
        ("U", "V"): (2, Fraction(1, 4)),
    }
    assert walk_sum(walks) == word_trace(Word("AB"))


def test_alternating_minimizers():
    res = kappa_walks(Word("AB" * 5))
    assert [("".join(m.sigma), "".join(m.tau)) for m in res.minimizers] == [("PPPPP", "VVVVV"), ("UUUUU", "QQQQQ")]
    assert all(m.trace_value * 2**5 == 1 for m in res.minimizers)


def test_bridge_word_unique_minimizer():
    res = kappa_walks(BRIDGE55)
    assert len(res.minimizers) == 1
    (mz,) = res.minimizers
    assert ("".join(mz.sigma), "".join(mz.tau)) == ("PUU", "VQV")
    assert mz.trace_value == Fraction(1, 16)


def test_bridge_examples():
    res = kappa_bridge(RunForm((3, 1, 1), (1, 3, 1)))
    assert res.kappa == 4
    assert [(m.S, m.gamma, m.cost) for m in res.minimizers] == [((1,), (1, 3), 4)]
    res = kappa_bridge(RunForm((5,), (5,)))
    assert res.kappa == 5 and [m.S for m in res.minimizers] == [(), (1,)]
    res = kappa_bridge(RunForm((1,) * 5, (1,) * 5))
    assert res.kappa == 5 and [m.S for m in res.minimizers] == [(), (1, 2, 3, 4, 5)]


def test_complexity_guards():
    w = Word("AB" * 6)
    with pytest.raises(ComplexityGuard):
        walk_expansion(w, max_runs=5)
    with pytest.raises(ComplexityGuard):
        kappa_bridge(w, max_runs=5)


def _naive_walk_traces(r):
    mats = build_projections().as_dict()
    out = {}
    for sigma in product("PU", repeat=r):
        for tau in product("VQ", repeat=r):
            seq = [x for pair in zip(sigma, tau) for x in pair]
            acc = mats[seq[0]]
            for name in seq[1:]:
                acc = acc @ mats[name]
            if acc.trace() != 0:
                out[tuple(seq)] = acc.trace()
    return out


@pytest.mark.parametrize("r", range(1, 5))
def test_pruned_walk_table_matches_naive(r):
    assert _nonzero_walk_traces(r) == _naive_walk_traces(r)


@pytest.mark.parametrize("r", range(1, 6))
def test_walk_trace_is_product_of_overlaps(r):
    # tr(R1...Rk)^2 = prod tr(Rj R_{j+1}) when all overlaps are positive
    mats = build_projections().as_dict()
    for seq, tr in _nonzero_walk_traces(r).items():
        assert tr > 0
        prod = Fraction(1)
        for a, b in zip(seq, seq[1:] + seq[:1]):
            prod *= (mats[a] @ mats[b]).trace()
        assert tr * tr == prod


def test_expansion_completeness():
    for w in words_up_to(10, both_letters=True):
        walks = walk_expansion(w)
        assert all(wa.trace_value > 0 for wa in walks)
        rf = run_decomposition(w)
        for wa in walks:
            expected = sum(a for s, a in zip(wa.sigma, rf.a) if s == "U")
            expected += sum(b for t, b in zip(wa.tau, rf.b) if t == "V")
            assert wa.weight == expected
        assert walk_sum(walks) == word_trace(w), w


def test_three_methods_agree_small():
    for w in words_up_to(9, both_letters=True):
        brute, walks, bridge = kappa_brute(w), kappa_walks(w), kappa_bridge(w)
        assert brute.kappa == walks.kappa == bridge.kappa, w
        assert brute.leading_coefficient == walks.leading_coefficient, w


def test_kappa_rotation_invariant():
    for w in words_up_to(10, both_letters=True):
        k = kappa_bridge(w).kappa
        assert all(kappa_bridge(w.rotate(j)).kappa == k for j in range(1, len(w)))


@pytest.mark.parametrize("n, m", [(5, 5), (5, 6), (6, 6)])
def test_lower_bound_four(n, m):
    sweep = sweep_kappa(n, m)
    assert min(sweep.kappa_histogram) == 4
    assert sweep.total == comb(n + m, n)


@pytest.mark.parametrize("r", range(1, 11))
def test_gamma_strictly_grows(r):
    for size in range(1, r):
        for S in combinations(range(1, r + 1), size):
            assert len(gamma_of(set(S), r)) > len(S)


def test_order4_minimizer_structure():
    for n, m in [(5, 5), (5, 6), (6, 7)]:
        for w in cyclic_shifts(bridge_word(n, m)):
            res = kappa_walks(w)
            assert res.kappa == 4 and len(res.minimizers) == 1
            rf = run_decomposition(w)
            (mz,) = res.minimizers
            u_runs = [a for s, a in zip(mz.sigma, rf.a) if s == "U"]
            v_runs = [b for t, b in zip(mz.tau, rf.b) if t == "V"]
            assert u_runs == [1, 1] and v_runs == [1, 1]
            assert res.leading_coefficient == 1


def test_classify_55():
    words = classify_order4(5, 5)
    assert len(words) == 10
    assert set(words) == cyclic_shifts(BRIDGE55)
    sweep = sweep_kappa(5, 5)
    assert sum(c for k, c in sweep.kappa_histogram.items() if k >= 5) == 242


def test_classify_65():
    words = classify_order4(6, 5)
    assert len(words) == 11
    assert set(words) == cyclic_shifts(parse_word("A^4 B A B^3 A B"))
    assert words == expected_order4(6, 5)


def test_classify_range_error():
    with pytest.raises(RangeError):
        classify_order4(4, 6)


def test_kappa_result_json():
    obj = kappa_walks(BRIDGE55).to_json()
    assert obj["word"] == "A^3 B A B^3 A B"
    assert obj["kappa"] == 4 and obj["leading_coefficient"] == "1/1" and obj["method"] == "walks"
    assert obj["minimizers"] == [{"sigma": "PUU", "tau": "VQV", "weight": 4, "trace_value": "1/16"}]
