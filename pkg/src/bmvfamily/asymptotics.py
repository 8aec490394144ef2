"""Leading small-x exponent of word traces.

The leading exponent kappa(W) is computed three independent ways:

* ``kappa_brute``: valuation of the exact trace polynomial;
* ``kappa_walks``: minimum weight over admissible projection walks, where
  each A-run picks P or U and each B-run picks V or Q;
* ``kappa_bridge``: the weighted shortest-bridge minimum over subsets S of
  A-runs kept in P, cost = sum_{i not in S} a_i + sum_{i in Gamma(S)} b_i.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Optional, Union

from .errors import ComplexityGuard, RangeError, SingleLetterWord
from .exact import Poly
from .family import Mat3, build_projections
from .words import RunForm, Word, cyclic_shifts, enumerate_words, run_decomposition, word_trace

DEFAULT_MAX_WALK_RUNS = 16
DEFAULT_MAX_BRIDGE_RUNS = 24


@dataclass(frozen=True)
class WalkAssignment:
    sigma: tuple[str, ...]
    tau: tuple[str, ...]
    weight: int
    trace_value: Fraction

    def to_json(self) -> dict:
        return {
            "sigma": "".join(self.sigma),
            "tau": "".join(self.tau),
            "weight": self.weight,
            "trace_value": f"{self.trace_value.numerator}/{self.trace_value.denominator}",
        }


@dataclass(frozen=True)
class BridgeSubset:
    S: tuple[int, ...]
    gamma: tuple[int, ...]
    cost: int

    def to_json(self) -> dict:
        return {"S": list(self.S), "gamma": list(self.gamma), "cost": self.cost}


@dataclass(frozen=True)
class KappaResult:
    word: Word
    kappa: int
    leading_coefficient: Optional[Fraction]
    method: str
    minimizers: tuple[Union[WalkAssignment, BridgeSubset], ...] = field(default=())

    def to_json(self) -> dict:
        lc = self.leading_coefficient
        return {
            "word": str(self.word),
            "kappa": self.kappa,
            "leading_coefficient": None if lc is None else f"{lc.numerator}/{lc.denominator}",
            "method": self.method,
            "minimizers": [mz.to_json() for mz in self.minimizers],
        }


def _require_both(w: Word) -> None:
    if not w.has_both_letters():
        raise SingleLetterWord(f"word {w} needs both letters")


def kappa_brute(w: Word) -> KappaResult:
    _require_both(w)
    kappa, coeff = word_trace(w).valuation()
    return KappaResult(w, kappa, coeff, "brute")


# -- admissible walks ------------------------------------------------------


@lru_cache(maxsize=None)
def _nonzero_walk_traces(r: int) -> dict[tuple[str, ...], Fraction]:
    """All cyclic products sigma_1 tau_1 ... sigma_r tau_r with nonzero trace.

    Keys interleave the choices: (sigma_1, tau_1, ..., sigma_r, tau_r).
    Branches whose prefix product is already zero are cut.
    """
    mats = build_projections().as_dict()
    slots = [("P", "U"), ("V", "Q")] * r
    out: dict[tuple[str, ...], Fraction] = {}

    def dfs(depth: int, prefix: tuple[str, ...], acc: Mat3) -> None:
        if depth == len(slots):
            tr = acc.trace()
            if tr != 0:
                out[prefix] = tr
            return
        for name in slots[depth]:
            nxt = acc @ mats[name] if depth else mats[name]
            if not nxt.is_zero():
                dfs(depth + 1, prefix + (name,), nxt)

    dfs(0, (), None)
    return out


def walk_expansion(w: Word, max_runs: int = DEFAULT_MAX_WALK_RUNS) -> list[WalkAssignment]:
    """Admissible assignments of the word's run form, with weights and traces.

    Summing (2x)^weight * trace_value over the result gives tr W(A_x, B_x).
    """
    _require_both(w)
    rf = run_decomposition(w)
    if rf.r > max_runs:
        raise ComplexityGuard(f"r={rf.r} exceeds walk cap {max_runs}")
    out = []
    for key, tr in _nonzero_walk_traces(rf.r).items():
        sigma, tau = key[0::2], key[1::2]
        weight = sum(a for s, a in zip(sigma, rf.a) if s == "U")
        weight += sum(b for t, b in zip(tau, rf.b) if t == "V")
        out.append(WalkAssignment(sigma, tau, weight, tr))
    out.sort(key=lambda wa: (wa.sigma, wa.tau))
    return out


def walk_sum(assignments: list[WalkAssignment]) -> Poly:
    """Sum of (2x)^weight * trace_value as a Poly."""
    total: dict[int, Fraction] = {}
    for wa in assignments:
        total[wa.weight] = total.get(wa.weight, 0) + wa.trace_value * 2**wa.weight
    return Poly(total)


def kappa_walks(w: Word, max_runs: int = DEFAULT_MAX_WALK_RUNS) -> KappaResult:
    walks = walk_expansion(w, max_runs)
    kappa = min(wa.weight for wa in walks)
    minimizers = tuple(wa for wa in walks if wa.weight == kappa)
    lead = 2**kappa * sum((wa.trace_value for wa in minimizers), Fraction(0))
    return KappaResult(w, kappa, lead, "walks", minimizers)


# -- shortest bridge -------------------------------------------------------


def gamma_of(S: frozenset[int] | set[int], r: int) -> frozenset[int]:
    """{i : i in S or i+1 in S}, 1-based indices modulo r."""
    return frozenset(i for i in range(1, r + 1) if i in S or (i % r) + 1 in S)


def bridge_cost(rf: RunForm, S) -> BridgeSubset:
    S = frozenset(S)
    gamma = gamma_of(S, rf.r)
    cost = sum(a for i, a in enumerate(rf.a, 1) if i not in S)
    cost += sum(b for i, b in enumerate(rf.b, 1) if i in gamma)
    return BridgeSubset(tuple(sorted(S)), tuple(sorted(gamma)), cost)


def kappa_bridge(rf: RunForm | Word, max_runs: int = DEFAULT_MAX_BRIDGE_RUNS) -> KappaResult:
    """Minimize the bridge cost over all 2^r subsets; no leading coefficient."""
    if isinstance(rf, Word):
        _require_both(rf)
        rf = run_decomposition(rf)
    if rf.r > max_runs:
        raise ComplexityGuard(f"r={rf.r} exceeds bridge cap {max_runs}")
    r = rf.r
    subsets = []
    for mask in product((False, True), repeat=r):
        S = [i + 1 for i in range(r) if mask[i]]
        subsets.append(bridge_cost(rf, S))
    kappa = min(bs.cost for bs in subsets)
    minimizers = sorted((bs for bs in subsets if bs.cost == kappa), key=lambda bs: bs.S)
    return KappaResult(rf.original_word(), kappa, None, "bridge", tuple(minimizers))


# -- order-x^4 classification ----------------------------------------------


def bridge_word(n: int, m: int) -> Word:
    """A^(n-2) B A B^(m-2) A B."""
    return Word("A" * (n - 2) + "B" + "A" + "B" * (m - 2) + "A" + "B")


@dataclass
class Classification:
    n: int
    m: int
    order4: list[Word]
    kappa_histogram: dict[int, int]

    @property
    def total(self) -> int:
        return sum(self.kappa_histogram.values())

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "order4": [str(w) for w in self.order4],
            "kappa_histogram": {str(k): v for k, v in sorted(self.kappa_histogram.items())},
            "total": self.total,
        }


def sweep_kappa(n: int, m: int) -> Classification:
    """Brute-force kappa of every word with n A's and m B's."""
    hist: Counter[int] = Counter()
    order4 = []
    for w in enumerate_words(n, m):
        k = word_trace(w).valuation()[0]
        hist[k] += 1
        if k == 4:
            order4.append(w)
    return Classification(n, m, order4, dict(hist))


def classify_order4(n: int, m: int) -> list[Word]:
    """Words with kappa = 4 (lexicographic); requires n, m >= 5."""
    if n < 5 or m < 5:
        raise RangeError(f"classification needs n, m >= 5, got ({n}, {m})")
    result = sweep_kappa(n, m)
    low = min(result.kappa_histogram)
    if low < 4:
        raise ArithmeticError(f"found kappa={low} < 4 at ({n}, {m})")
    return result.order4


def expected_order4(n: int, m: int) -> list[Word]:
    return sorted(cyclic_shifts(bridge_word(n, m)))
