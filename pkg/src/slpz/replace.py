"""The replacement pass: collapse a paired word into the next-phase word.

Given a pairing produced by the sweep (or any pairing with the same three
properties), one scan builds the shorter word of the next phase:

* a pair of free letters becomes one fresh letter, recorded as a binary
  rule ``fresh -> (left, right)``;
* an unpaired free letter is copied through unchanged;
* a factor allocates nothing: its compressed content is copied from the
  already written part of the new word, starting at the position where its
  definition landed. That keeps the factor a factor in the next phase.

Because every unpaired letter is followed by a pair, the output is at most
(2n+1)/3 letters long, and the factor count is preserved exactly.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

from .model import (
    FIRST,
    UNPAIRED,
    EmptyInputError,
    Factorization,
    InvariantError,
    Pairing,
    Rule,
    validate_pairing,
)

POS_UNDEFINED = -1


class SymbolAllocator:
    """Monotone source of fresh symbol ids, shared across phases."""

    def __init__(self, first: int):
        self._next = first

    def __call__(self) -> int:
        value = self._next
        self._next += 1
        return value

    @property
    def next_id(self) -> int:
        return self._next


def replace_pairs(
    word: Sequence[int],
    fact: Factorization,
    pairing: Pairing,
    rules: List[Rule],
    fresh_allocator: SymbolAllocator,
    dedup: bool = False,
    *,
    validate: bool = True,
) -> Tuple[List[int], Factorization, int, List[int]]:
    """Replace pairs with fresh letters and re-express factors.

    Appends one rule per replaced free-letter pair to ``rules`` (per
    distinct pair when ``dedup`` is on) and returns the new word, its
    factorization, the number of rules appended, and the position map from
    old positions to new ones (``POS_UNDEFINED`` for every position that
    was second in a pair).
    """
    n = len(word)
    if n == 0:
        raise EmptyInputError("cannot replace pairs in an empty word")
    if validate:
        problems = validate_pairing(word, fact, pairing)
        if problems:
            raise ValueError(
                "invalid pairing: " + "; ".join(str(p) for p in problems[:3])
            )

    marks = pairing.marks
    begin = fact.begin
    end = fact.end
    out: List[int] = []
    new_factors: List[tuple] = []  # (start, end, definition) in the new word
    pos = [POS_UNDEFINED] * n
    pair_symbol = {} if dedup else None
    fresh_count = 0

    out_append = out.append
    first_mark, unpaired_mark = FIRST, UNPAIRED
    write = 0  # == len(out), kept in a local for the hot loop
    i = 0
    while i < n:
        b = begin[i]
        if b is not None:
            src = pos[b]
            if src < 0:
                raise InvariantError(
                    f"factor definition at {b} has no image in the new word"
                )
            factor_start = write
            while True:
                if src >= write:
                    raise InvariantError(
                        "factor copy source caught up with the write position"
                    )
                pos[i] = write
                out_append(out[src])
                write += 1
                src += 1
                i += 2 if marks[i] == first_mark else 1
                if end[i - 1]:
                    break
            new_factors.append((factor_start, write - 1, pos[b]))
        else:
            pos[i] = write
            if marks[i] == unpaired_mark:
                out_append(word[i])
                i += 1
            else:
                left, right = word[i], word[i + 1]
                if pair_symbol is None:
                    fresh = fresh_allocator()
                    rules.append(Rule(fresh, left, right))
                    fresh_count += 1
                else:
                    fresh = pair_symbol.get((left, right))
                    if fresh is None:
                        fresh = fresh_allocator()
                        rules.append(Rule(fresh, left, right))
                        pair_symbol[(left, right)] = fresh
                        fresh_count += 1
                out_append(fresh)
                i += 2
            write += 1

    if 3 * write > 2 * n + 1:
        raise InvariantError(
            f"replacement left {write} of {n} letters, above (2n+1)/3"
        )
    return out, Factorization.from_factors(write, new_factors), fresh_count, pos
