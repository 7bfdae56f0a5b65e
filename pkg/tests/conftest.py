"""Shared test helpers: corpus generators used across the suite."""

import random

from slpz.model import Factorization


def binary_words(max_len, lo=1):
    """Every word over {a, b} with length in [lo, max_len]."""
    for length in range(lo, max_len + 1):
        for bits in range(1 << length):
            yield bytes(97 + ((bits >> k) & 1) for k in range(length))


def random_factorized_word(rng: random.Random, max_len: int = 120):
    """Build a (word, factorization) pair that is valid by construction.

    The word grows left to right: either a fresh random letter (a free
    position) or a copy of an earlier substring, copied letter by letter so
    overlapping self-referential factors come out right. Short factors,
    one-letter factors and definitions starting one position left are all
    deliberately common, to reach the repair branches of the pairing sweep
    rather than only the shapes an LZ factorizer would emit.
    """
    alphabet = rng.choice((2, 3, 4, 26))
    word = [rng.randrange(alphabet)]
    factors = []
    while len(word) < max_len:
        if rng.random() < 0.55:
            word.append(rng.randrange(alphabet))
            continue
        i = len(word)
        j = rng.randrange(i)
        max_span = max_len - i
        if rng.random() < 0.25:
            span = 1
        else:
            span = min(rng.randint(2, 12), max_span)
        if span < 1:
            break
        for t in range(span):
            word.append(word[j + t])
        factors.append((i, i + span - 1, j))
    fact = Factorization.from_factors(len(word), factors)
    return word, fact
