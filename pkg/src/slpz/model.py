"""Shared domain types for the pair-replacement grammar compressor.

Words are sequences of non-negative integer symbols. Ids below
``ALPHABET_SIZE`` are terminals (input byte values), ids at or above it are
fresh letters introduced as grammar nonterminals. All positions are 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, List, NamedTuple, Optional, Sequence

ALPHABET_SIZE = 256

# Per-position pairing marks. UNSET means "not processed yet"; a finished
# pairing must not contain it.
UNSET = -1
UNPAIRED = 0
FIRST = 1
SECOND = 2

_MARK_CHARS = {UNSET: "?", UNPAIRED: "U", FIRST: "F", SECOND: "S"}

Word = List[int]


class EmptyInputError(ValueError):
    """The compressor cannot represent the empty string."""


class InvariantError(RuntimeError):
    """A structural guarantee of the algorithm was violated at runtime.

    Raised by the defensive checks inside the sweep and the per-phase
    accounting. Seeing this exception means the implementation (or a caller
    bypassing validation) broke a contract, not that the input is bad.
    """


@dataclass(frozen=True)
class Violation:
    """One validator finding: where and what kind."""

    position: int
    kind: str
    detail: str = ""

    def __str__(self) -> str:
        msg = f"{self.kind} at position {self.position}"
        return f"{msg} ({self.detail})" if self.detail else msg


@dataclass
class Factorization:
    """Per-position phrase annotation of a word.

    ``begin[i] = j`` marks position i as the first letter of a factor whose
    definition starts at position j; ``begin[i] = None`` means no factor
    starts at i. ``end[i]`` flags the last letter of a factor. Positions not
    covered by any factor span are free letters.
    """

    begin: List[Optional[int]]
    end: List[bool]

    def __len__(self) -> int:
        return len(self.begin)

    @classmethod
    def all_free(cls, n: int) -> "Factorization":
        return cls([None] * n, [False] * n)

    @classmethod
    def from_factors(cls, n: int, factors: Sequence[tuple]) -> "Factorization":
        """Build from (start, end, definition) triples; other positions are free."""
        fact = cls.all_free(n)
        for start, end, defpos in factors:
            fact.begin[start] = defpos
            fact.end[end] = True
        return fact

    def copy(self) -> "Factorization":
        return Factorization(list(self.begin), list(self.end))

    def spans(self) -> Iterator[tuple]:
        """Yield (start, end, definition) per factor, left to right.

        Raises InvariantError if the begin/end flags do not pair up.
        """
        open_start: Optional[int] = None
        open_def = -1
        for i in range(len(self.begin)):
            b = self.begin[i]
            if b is not None:
                if open_start is not None:
                    raise InvariantError(f"factor start inside factor at {i}")
                open_start, open_def = i, b
            if self.end[i]:
                if open_start is None:
                    raise InvariantError(f"factor end without start at {i}")
                yield open_start, i, open_def
                open_start = None
        if open_start is not None:
            raise InvariantError(f"unclosed factor at {open_start}")

    def counts(self) -> tuple:
        """Return (factor count, positions covered by factors)."""
        starts = [i for i, b in enumerate(self.begin) if b is not None]
        ends = [i for i, e in enumerate(self.end) if e]
        covered = 0
        for s, e in zip(starts, ends):
            covered += e - s + 1
        return len(starts), covered

    def factor_count(self) -> int:
        return self.counts()[0]

    def free_count(self) -> int:
        factors, covered = self.counts()
        return len(self.begin) - covered

    def phrase_count(self) -> int:
        """Number of phrases: factors plus free letters."""
        factors, covered = self.counts()
        return factors + (len(self.begin) - covered)


@dataclass
class Pairing:
    """Per-position pairing marks (UNPAIRED, FIRST or SECOND of a pair)."""

    marks: List[int]

    def __len__(self) -> int:
        return len(self.marks)

    def to_string(self) -> str:
        return "".join(_MARK_CHARS.get(m, "!") for m in self.marks)

    @classmethod
    def from_string(cls, s: str) -> "Pairing":
        rev = {"U": UNPAIRED, "F": FIRST, "S": SECOND, "?": UNSET}
        return cls([rev[c] for c in s])

    def paired_count(self) -> int:
        return sum(1 for m in self.marks if m != UNPAIRED)


class Rule(NamedTuple):
    """One binary grammar rule: lhs expands to left followed by right."""

    lhs: int
    left: int
    right: int


@dataclass(frozen=True)
class Slp:
    """A straight-line program: binary rules plus a start symbol.

    Rule left-hand sides are consecutive ids starting at ``alphabet_size``,
    and every rule only references smaller ids, so the grammar is acyclic by
    construction and expands to exactly one string.
    """

    alphabet_size: int
    rules: tuple
    start: int

    def validate(self) -> None:
        if self.alphabet_size < 1:
            raise ValueError("alphabet_size must be positive")
        for idx, rule in enumerate(self.rules):
            expected = self.alphabet_size + idx
            if rule.lhs != expected:
                raise ValueError(
                    f"rule id gap: rule {idx} has lhs {rule.lhs}, expected {expected}"
                )
            if not (0 <= rule.left < rule.lhs) or not (0 <= rule.right < rule.lhs):
                raise ValueError(
                    f"forward reference in rule {rule.lhs} -> {rule.left} {rule.right}"
                )
        limit = self.alphabet_size + len(self.rules)
        if not (0 <= self.start < limit):
            raise ValueError(f"start symbol {self.start} out of range")


@dataclass
class PhaseStats:
    """Counters for one pairing-and-replacement phase."""

    phase_index: int
    len_before: int
    len_after: int
    factors_before: int
    factors_after: int
    free_before: int
    free_after: int
    free_created_by_pairing: int
    fresh_letters: int

    def violations(self, dedup: bool = False) -> List[str]:
        """Check the per-phase budget invariants; empty list means all hold."""
        out = []
        if 3 * self.len_after > 2 * self.len_before + 1:
            out.append(
                f"phase {self.phase_index}: length {self.len_before} shrank only "
                f"to {self.len_after}, above (2n+1)/3"
            )
        if self.factors_after > self.factors_before:
            out.append(
                f"phase {self.phase_index}: factor count grew "
                f"{self.factors_before} -> {self.factors_after}"
            )
        if self.free_created_by_pairing > 6 * self.factors_before:
            out.append(
                f"phase {self.phase_index}: pairing created "
                f"{self.free_created_by_pairing} free letters, over six per factor"
            )
        drop = self.free_before + self.free_created_by_pairing - self.free_after
        if dedup:
            if self.fresh_letters > drop:
                out.append(
                    f"phase {self.phase_index}: {self.fresh_letters} fresh letters "
                    f"exceed free-letter drop {drop}"
                )
        elif self.fresh_letters != drop:
            out.append(
                f"phase {self.phase_index}: {self.fresh_letters} fresh letters "
                f"but free-letter drop {drop}"
            )
        return out

    def as_dict(self) -> dict:
        return {
            "phase": self.phase_index,
            "len_before": self.len_before,
            "len_after": self.len_after,
            "factors_before": self.factors_before,
            "factors_after": self.factors_after,
            "free_before": self.free_before,
            "free_after": self.free_after,
            "free_created_by_pairing": self.free_created_by_pairing,
            "fresh_letters": self.fresh_letters,
        }


def validate_factorization(
    word: Sequence[int],
    fact: Factorization,
    *,
    require_wide_definitions: bool = False,
) -> List[Violation]:
    """Check that ``fact`` is a proper factorization of ``word``.

    Returns one Violation per problem found; an empty list means the
    factorization is valid. With ``require_wide_definitions`` every factor of
    length at least 2 must have its definition starting at least two
    positions left of the factor (the state guaranteed after find_pairing).
    """
    n = len(word)
    if len(fact.begin) != n or len(fact.end) != n:
        raise ValueError("length mismatch between word and factorization")
    violations: List[Violation] = []
    open_start: Optional[int] = None
    open_def = -1
    for i in range(n):
        b = fact.begin[i]
        if b is not None:
            if open_start is not None:
                violations.append(Violation(i, "begin inside factor"))
            else:
                open_start, open_def = i, b
        if fact.end[i]:
            if open_start is None:
                violations.append(Violation(i, "end without begin"))
            else:
                violations.extend(
                    _check_span(word, open_start, i, open_def, require_wide_definitions)
                )
                open_start = None
    if open_start is not None:
        violations.append(Violation(open_start, "unclosed factor"))
    return violations


def _check_span(
    word: Sequence[int], start: int, end: int, defpos: int, require_wide: bool
) -> List[Violation]:
    out = []
    if defpos < 0 or defpos >= len(word):
        out.append(Violation(start, "definition out of range", f"definition {defpos}"))
        return out
    if defpos >= start:
        out.append(
            Violation(start, "definition not strictly left", f"definition {defpos}")
        )
        return out
    if require_wide and end > start and defpos == start - 1:
        out.append(
            Violation(start, "definition too close", "starts one position left")
        )
    for t in range(end - start + 1):
        if word[defpos + t] != word[start + t]:
            out.append(
                Violation(
                    start + t,
                    "definition mismatch",
                    f"factor [{start}..{end}] definition {defpos}",
                )
            )
            break
    return out


def validate_pairing(
    word: Sequence[int], fact: Factorization, pairing: Pairing
) -> List[Violation]:
    """Check a pairing against its word and factorization.

    Verifies mark consistency (pairs are adjacent, disjoint and mutual, the
    last position is never a pair opener), that no two consecutive positions
    are unpaired, that every factor starts and ends with a whole pair, and
    that every factor is paired exactly like its definition. The
    factorization itself is assumed proper.
    """
    n = len(word)
    if len(fact.begin) != n or len(fact.end) != n or len(pairing.marks) != n:
        raise ValueError("length mismatch between word, factorization and pairing")
    marks = pairing.marks
    violations: List[Violation] = []
    for i in range(n):
        m = marks[i]
        if m == UNSET:
            violations.append(Violation(i, "unassigned mark"))
        elif m not in (UNPAIRED, FIRST, SECOND):
            violations.append(Violation(i, "invalid mark", repr(m)))
        elif m == FIRST and (i + 1 >= n or marks[i + 1] != SECOND):
            violations.append(Violation(i, "first without second"))
        elif m == SECOND and (i == 0 or marks[i - 1] != FIRST):
            violations.append(Violation(i, "second without first"))
        if i + 1 < n and marks[i] == UNPAIRED and marks[i + 1] == UNPAIRED:
            violations.append(Violation(i + 1, "adjacent unpaired"))

    # Tolerant span walk: malformed begin/end flags are the factorization
    # validator's business, not ours.
    open_start: Optional[int] = None
    open_def = -1
    for i in range(n):
        if fact.begin[i] is not None and open_start is None:
            open_start, open_def = i, fact.begin[i]
        if fact.end[i] and open_start is not None:
            violations.extend(_check_factor_pairing(marks, open_start, i, open_def))
            open_start = None
    return violations


def _check_factor_pairing(
    marks: List[int], start: int, end: int, defpos: int
) -> List[Violation]:
    out = []
    if end == start:
        out.append(Violation(start, "factor shorter than 2"))
        return out
    if marks[start] != FIRST or marks[start + 1] != SECOND:
        out.append(Violation(start, "factor start not a pair"))
    if marks[end - 1] != FIRST or marks[end] != SECOND:
        out.append(Violation(end, "factor end not a pair"))
    if 0 <= defpos < start:
        for t in range(end - start + 1):
            if marks[defpos + t] != marks[start + t]:
                out.append(
                    Violation(
                        start + t,
                        "factor pairing differs from definition",
                        f"factor [{start}..{end}] definition {defpos}",
                    )
                )
                break
    return out


def rebuild_from_phrases(word: Sequence[int], fact: Factorization) -> Word:
    """Re-derive the word from free letters and factor definitions alone.

    Copies each factor from the already rebuilt prefix, resolving
    overlapping definitions left to right. Equality with ``word`` is what
    makes the factorization meaningful as a compressed representation.
    """
    out: Word = []
    span_iter = fact.spans()
    next_span = next(span_iter, None)
    i = 0
    n = len(word)
    while i < n:
        if next_span is not None and next_span[0] == i:
            start, end, defpos = next_span
            for t in range(end - start + 1):
                out.append(out[defpos + t])
            i = end + 1
            next_span = next(span_iter, None)
        else:
            out.append(word[i])
            i += 1
    return out
