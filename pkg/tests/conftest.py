from itertools import product

import pytest

from bmvfamily.family import build_family
from bmvfamily.words import Word


def words_up_to(max_len: int, both_letters: bool = False):
    for length in range(1, max_len + 1):
        for letters in product("AB", repeat=length):
            w = Word("".join(letters))
            if not both_letters or w.has_both_letters():
                yield w


def mat3_trace(w: Word):
    """Trace by folding Poly-valued Mat3 products; independent of the numpy kernel."""
    A, B = build_family()
    acc = None
    for ch in w.letters:
        g = A if ch == "A" else B
        acc = g if acc is None else acc @ g
    return acc.trace()


@pytest.fixture(scope="session")
def small_words():
    return list(words_up_to(10))
