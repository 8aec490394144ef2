"""Binary words in the letters A and B, their cyclic run form, and exact traces."""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import comb
from typing import Iterator

import numpy as np

from .errors import SingleLetterWord, WordParseError
from .exact import Poly

_TOKEN = re.compile(r"\S+")
_RUN = re.compile(r"([AB])(?:\^(\d+))?")


@dataclass(frozen=True, order=True)
class Word:
    letters: str

    def __post_init__(self):
        if not self.letters or set(self.letters) - {"A", "B"}:
            raise ValueError(f"not a nonempty word over {{A, B}}: {self.letters!r}")

    @classmethod
    def parse(cls, text: str) -> Word:
        return parse_word(text)

    @property
    def n(self) -> int:
        return self.letters.count("A")

    @property
    def m(self) -> int:
        return self.letters.count("B")

    def __len__(self) -> int:
        return len(self.letters)

    def has_both_letters(self) -> bool:
        return "A" in self.letters and "B" in self.letters

    def rotate(self, k: int) -> Word:
        k %= len(self.letters)
        return Word(self.letters[k:] + self.letters[:k])

    def reverse(self) -> Word:
        return Word(self.letters[::-1])

    def swap_letters(self) -> Word:
        return Word(self.letters.translate(str.maketrans("AB", "BA")))

    def runs(self) -> list[tuple[str, int]]:
        """Linear (non-cyclic) runs as (letter, length) pairs."""
        out: list[tuple[str, int]] = []
        for ch in self.letters:
            if out and out[-1][0] == ch:
                out[-1] = (ch, out[-1][1] + 1)
            else:
                out.append((ch, 1))
        return out

    def __str__(self) -> str:
        return format_word(self)

    def to_json(self) -> str:
        return format_word(self)


def parse_word(text: str) -> Word:
    """Parse plain letters (``"AAABAB"``) or run shorthand (``"A^3 B A B^3"``)."""
    letters: list[str] = []
    for tok in _TOKEN.finditer(text):
        raw, start = tok.group(), tok.start()
        if "^" not in raw:
            for i, ch in enumerate(raw):
                if ch not in "AB":
                    raise WordParseError(f"unexpected character {ch!r}", start + i)
            letters.append(raw)
            continue
        match = _RUN.fullmatch(raw)
        if match is None or match.group(2) is None:
            bad = next((i for i, ch in enumerate(raw) if ch not in "AB^0123456789"), None)
            pos = start + (bad if bad is not None else 0)
            raise WordParseError(f"malformed run token {raw!r}", pos)
        exponent = int(match.group(2))
        if exponent < 1:
            raise WordParseError("run exponent must be >= 1", start + raw.index("^") + 1)
        letters.append(match.group(1) * exponent)
    if not letters:
        raise WordParseError("empty word", 0)
    return Word("".join(letters))


def format_word(w: Word) -> str:
    """Run shorthand if some run has length >= 3, plain letters otherwise."""
    runs = w.runs()
    if all(k < 3 for _, k in runs):
        return w.letters
    return " ".join(ch if k == 1 else f"{ch}^{k}" for ch, k in runs)


# -- enumeration -----------------------------------------------------------


def word_count(n: int, m: int) -> int:
    return comb(n + m, n)


def unrank_word(n: int, m: int, rank: int) -> Word:
    """The word of the given lexicographic rank (A < B) among all n-A, m-B words."""
    total = comb(n + m, n)
    if not 0 <= rank < total:
        raise IndexError(f"rank {rank} out of range for ({n}, {m})")
    out = []
    while n + m:
        # words starting with A come first
        with_a = comb(n + m - 1, n - 1) if n else 0
        if rank < with_a:
            out.append("A")
            n -= 1
        else:
            rank -= with_a
            out.append("B")
            m -= 1
    return Word("".join(out))


def rank_word(w: Word) -> int:
    n, m = w.n, w.m
    rank = 0
    for ch in w.letters:
        if ch == "A":
            n -= 1
        else:
            rank += comb(n + m - 1, n - 1) if n else 0
            m -= 1
    return rank


def _next_word(letters: list[str]) -> bool:
    """Advance to the lexicographic successor in place; False when exhausted."""
    i = len(letters) - 2
    while i >= 0 and not (letters[i] == "A" and letters[i + 1] == "B"):
        i -= 1
    if i < 0:
        return False
    tail = letters[i + 1 :]
    letters[i] = "B"
    tail.remove("B")
    tail.append("A")
    tail.sort()
    letters[i + 1 :] = tail
    return True


def partition_ranges(total: int, parts: int) -> list[tuple[int, int]]:
    """Split ``range(total)`` into ``parts`` contiguous, nearly equal ranges."""
    parts = max(1, parts)
    base, extra = divmod(total, parts)
    out, lo = [], 0
    for k in range(parts):
        hi = lo + base + (1 if k < extra else 0)
        out.append((lo, hi))
        lo = hi
    return out


def enumerate_words(n: int, m: int, part: int = 0, parts: int = 1) -> Iterator[Word]:
    """Yield the words with n A's and m B's in lexicographic order.

    With ``parts > 1`` only the ``part``-th contiguous rank range is produced;
    concatenating all parts in order reproduces the full stream.
    """
    if n < 0 or m < 0 or n + m < 1:
        raise ValueError(f"need n, m >= 0 and n + m >= 1, got ({n}, {m})")
    lo, hi = partition_ranges(word_count(n, m), parts)[part]
    if lo >= hi:
        return
    letters = list(unrank_word(n, m, lo).letters)
    for _ in range(hi - lo):
        yield Word("".join(letters))
        if not _next_word(letters):
            break


# -- cyclic structure ------------------------------------------------------


@dataclass(frozen=True)
class RunForm:
    a: tuple[int, ...]
    b: tuple[int, ...]
    rotation_offset: int = 0

    def __post_init__(self):
        if len(self.a) != len(self.b) or not self.a:
            raise ValueError("run form needs r >= 1 A-runs and as many B-runs")
        if min(self.a) < 1 or min(self.b) < 1:
            raise ValueError("run lengths must be positive")

    @property
    def r(self) -> int:
        return len(self.a)

    @property
    def n(self) -> int:
        return sum(self.a)

    @property
    def m(self) -> int:
        return sum(self.b)

    def rotated_word(self) -> Word:
        return Word("".join("A" * ai + "B" * bi for ai, bi in zip(self.a, self.b)))

    def original_word(self) -> Word:
        return self.rotated_word().rotate(-self.rotation_offset)

    def to_json(self) -> dict:
        return {"r": self.r, "a": list(self.a), "b": list(self.b), "rotation_offset": self.rotation_offset}


def run_decomposition(w: Word) -> RunForm:
    """Rotate w to start at an A-run (first such start in w) and split into runs."""
    if not w.has_both_letters():
        raise SingleLetterWord(f"word {w} needs both letters for a run form")
    s = w.letters
    offset = next(i for i in range(len(s)) if s[i] == "A" and s[i - 1] == "B")
    rotated = w.rotate(offset)
    runs = rotated.runs()
    a = tuple(k for ch, k in runs[0::2])
    b = tuple(k for ch, k in runs[1::2])
    return RunForm(a, b, offset)


def cyclic_shifts(w: Word) -> frozenset[Word]:
    return frozenset(w.rotate(k) for k in range(len(w)))


# -- traces ----------------------------------------------------------------

# A_x = A0 + x A1, B_x = B0 + x B1 (integer coefficient matrices)
_A0 = np.array([[1, 0, 0], [0, 0, 0], [0, 0, 0]], dtype=np.int64)
_A1 = np.array([[0, 0, 0], [0, 1, -1], [0, -1, 1]], dtype=np.int64)
_B0 = np.array([[0, 0, 0], [0, 0, 0], [0, 0, 1]], dtype=np.int64)
_B1 = np.array([[1, -1, 0], [-1, 1, 0], [0, 0, 0]], dtype=np.int64)
_GENERATORS = {"A": (_A0, _A1), "B": (_B0, _B1)}

# Every entry of a length-L product has coefficient l1-norm <= 3^(L-1).
_INT64_SAFE_LENGTH = 38


def word_matrix_coeffs(w: Word) -> np.ndarray:
    """Coefficient stack C with W(A_x, B_x) = sum_d C[d] x^d, folded left to right."""
    dtype = np.int64 if len(w) <= _INT64_SAFE_LENGTH else object
    gens = {k: (g0.astype(dtype), g1.astype(dtype)) for k, (g0, g1) in _GENERATORS.items()}
    acc = np.zeros((len(w) + 1, 3, 3), dtype=dtype)
    acc[0] = np.eye(3, dtype=dtype)
    for step, ch in enumerate(w.letters, start=1):
        g0, g1 = gens[ch]
        nxt = np.zeros_like(acc)
        nxt[: step + 1] = acc[: step + 1] @ g0
        nxt[1 : step + 1] += acc[:step] @ g1
        acc = nxt
    return acc


def word_trace(w: Word) -> Poly:
    """Exact tr W(A_x, B_x) as a polynomial in x."""
    coeffs = word_matrix_coeffs(w)
    diag = coeffs[:, 0, 0] + coeffs[:, 1, 1] + coeffs[:, 2, 2]
    return Poly({d: int(c) for d, c in enumerate(diag) if c})
