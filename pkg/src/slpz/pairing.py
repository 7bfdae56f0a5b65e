"""The pairing sweep: turn a factorized word into adjacent letter pairs.

One left-to-right pass assigns every position a mark (first of a pair,
second of a pair, or unpaired) while lightly repairing the factorization so
that three properties hold at the end:

* no two adjacent positions are both unpaired;
* every factor starts and ends with a complete pair;
* every factor is paired exactly like its definition, element by element.

The repairs only ever shrink factors: a one-letter factor is demoted to a
free letter; a letter-run factor (definition starting one position left)
gives up its first letter so the definition moves two positions away; a
factor whose definition start is not the first letter of a pair gives up
its first letter and the definition shifts right; and after copying the
definition's marks, letters are popped off the factor's right end until it
ends on a complete pair. Letters freed this way are re-read by the same
sweep immediately, so the pass stays linear: each position is considered at
most once as factor content and once as a free letter.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .model import (
    FIRST,
    SECOND,
    UNPAIRED,
    UNSET,
    EmptyInputError,
    Factorization,
    InvariantError,
    Pairing,
    validate_factorization,
)

# Each factor sheds at most: one letter as a one-letter demotion, one at the
# run split, two while the definition start is mid-pair, two while trimming
# the right end.
MAX_FREED_PER_FACTOR = 6


@dataclass
class PairingCounters:
    """Bookkeeping from one sweep, used for budget checks and reporting."""

    free_created: int
    freed_per_factor: List[int]
    factors_dropped: int
    considered: int

    @property
    def factors_seen(self) -> int:
        return len(self.freed_per_factor)

    @property
    def max_freed_per_factor(self) -> int:
        return max(self.freed_per_factor, default=0)


def find_pairing(
    word: Sequence[int], fact: Factorization, *, validate: bool = True
) -> Tuple[Pairing, Factorization, int]:
    """Pair up ``word`` under ``fact``; see the module docstring.

    Returns the pairing, the (possibly repaired) factorization, and the
    number of letters freed by the repairs. ``validate`` pre-checks the
    input factorization; callers that just built it can skip that pass.
    """
    pairing, fact_out, counters = find_pairing_counted(word, fact, validate=validate)
    return pairing, fact_out, counters.free_created


def find_pairing_counted(
    word: Sequence[int], fact: Factorization, *, validate: bool = True
) -> Tuple[Pairing, Factorization, PairingCounters]:
    """As ``find_pairing`` but returning the full sweep counters."""
    n = len(word)
    if n == 0:
        raise EmptyInputError("cannot pair an empty word")
    if validate:
        problems = validate_factorization(word, fact)
        if problems:
            raise ValueError(
                "invalid factorization: " + "; ".join(str(p) for p in problems[:3])
            )

    begin = list(fact.begin)
    end = list(fact.end)
    marks = [UNSET] * n
    marks[0] = UNPAIRED

    freed_per_factor: List[int] = []
    free_created = 0
    factors_dropped = 0
    considered = 0
    # A factor that sheds its first letter lives on one position to the
    # right; the very next iteration picks it up under the same identity.
    inherit_pos = -1
    inherit_fid = -1

    # Every iteration advances i: the free branch by one, the factor copy
    # by at least two even after right-end pops (which never reach back past
    # the factor's second letter). The considered-letters budget at the end
    # is the formal linear-work assertion.
    i = 1
    while i < n:
        b = begin[i]
        if b is not None:
            if i == inherit_pos:
                fid = inherit_fid
                inherit_pos = -1
            else:
                fid = len(freed_per_factor)
                freed_per_factor.append(0)
            if end[i]:
                # One-letter factor: demote it to a free letter.
                begin[i] = None
                end[i] = False
                freed_per_factor[fid] += 1
                free_created += 1
                factors_dropped += 1
            elif b == i - 1:
                # Letter run: free the first letter so the definition of the
                # rest starts two positions left of it.
                begin[i + 1] = i - 1
                begin[i] = None
                inherit_pos = i + 1
                inherit_fid = fid
                freed_per_factor[fid] += 1
                free_created += 1
            elif marks[b] != FIRST:
                # Definition starts mid-pair or unpaired: shed the factor's
                # first letter and shift the definition right by one.
                begin[i + 1] = b + 1
                begin[i] = None
                inherit_pos = i + 1
                inherit_fid = fid
                freed_per_factor[fid] += 1
                free_created += 1
            else:
                start = i
                j = b
                while True:
                    considered += 1
                    m = marks[j]
                    if m == UNSET:
                        raise InvariantError(
                            f"read an unassigned mark at {j} while copying"
                        )
                    if j > i - 2:
                        raise InvariantError(
                            f"definition cursor {j} overtook position {i}"
                        )
                    marks[i] = m
                    i += 1
                    j += 1
                    if end[i - 1]:
                        break
                # Pop letters off the right end until the factor closes on a
                # complete pair. The copied marks start First, Second, so
                # this can never reach back past the factor's second letter.
                while marks[i - 1] != SECOND:
                    i -= 1
                    if i <= start + 1:
                        raise InvariantError(
                            "right-end trimming shrank a factor below two letters"
                        )
                    end[i - 1] = True
                    end[i] = False
                    marks[i] = UNSET
                    freed_per_factor[fid] += 1
                    free_created += 1
                continue
        # Free letter, including any letter the branches above just freed:
        # pair it with its left neighbour if that one is still unpaired.
        considered += 1
        if marks[i - 1] == UNPAIRED:
            marks[i - 1] = FIRST
            marks[i] = SECOND
        else:
            marks[i] = UNPAIRED
        i += 1

    if considered > 2 * n:
        raise InvariantError(
            f"sweep considered {considered} letters, above the 2n budget"
        )
    if free_created > MAX_FREED_PER_FACTOR * len(freed_per_factor):
        raise InvariantError(
            f"created {free_created} free letters from {len(freed_per_factor)} factors"
        )
    for fid, freed in enumerate(freed_per_factor):
        if freed > MAX_FREED_PER_FACTOR:
            raise InvariantError(
                f"factor {fid} shed {freed} letters, above {MAX_FREED_PER_FACTOR}"
            )

    counters = PairingCounters(
        free_created=free_created,
        freed_per_factor=freed_per_factor,
        factors_dropped=factors_dropped,
        considered=considered,
    )
    return Pairing(marks), Factorization(begin, end), counters
