"""Compression driver and grammar life-cycle: compress, expand, measure.

``compress`` computes the LZ factorization once, then repeats the pairing
sweep and the replacement pass until a single symbol remains. Every pair of
free letters replaced along the way contributes one binary rule, so the
final symbol plus the accumulated rules form a straight-line program for
the input. Each phase shrinks the word to at most (2n+1)/3, which caps the
phase count at ceil(log_1.5 N) + 1 and, together with the per-phase budget
on freed letters, keeps the rule count within O(l + l*log(N/l)) for an
input of N bytes whose LZ factorization has l phrases.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import IO, List, Optional, Sequence, Union

from .lz77 import lz_factorize
from .model import (
    ALPHABET_SIZE,
    EmptyInputError,
    InvariantError,
    PhaseStats,
    Rule,
    Slp,
    Violation,
    validate_factorization,
    validate_pairing,
)
from .pairing import find_pairing_counted
from .replace import SymbolAllocator, replace_pairs

ByteSource = Union[bytes, bytearray, memoryview, Sequence[int]]


@dataclass
class CompressionResult:
    """Everything ``compress`` learned: the grammar and the evidence."""

    slp: Slp
    phase_stats: List[PhaseStats]
    lz_phrase_count: int
    lz_factor_count: int
    input_length: int
    dedup: bool
    max_freed_per_factor: int


def _as_word(data: ByteSource) -> List[int]:
    if isinstance(data, (bytes, bytearray, memoryview)):
        return list(data)
    word = list(data)
    for value in word:
        if not isinstance(value, int) or not 0 <= value < ALPHABET_SIZE:
            raise ValueError(f"input symbol {value!r} is not a byte value")
    return word


def _ensure_valid(problems: List[Violation], context: str) -> None:
    if problems:
        raise InvariantError(
            f"{context}: " + "; ".join(str(p) for p in problems[:3])
        )


def phase_budget(n: int) -> int:
    """Largest number of phases an input of length n can need, computed
    with exact integer arithmetic: the smallest k with (3/2)^k >= n, +1."""
    k = 0
    pow3 = 1
    pow2 = 1
    while pow3 < n * pow2:
        k += 1
        pow3 *= 3
        pow2 *= 2
    return k + 1


def compress(
    data: ByteSource,
    *,
    dedup: bool = False,
    verify: bool = False,
    trace_sink: Optional[IO[str]] = None,
) -> CompressionResult:
    """Build a straight-line program generating exactly ``data``.

    With ``verify`` every phase re-checks the factorization and pairing
    invariants with the full validators (linear extra work per phase); the
    cheap per-phase accounting checks run regardless. ``trace_sink``
    receives one JSON object per phase, one per line.
    """
    word = _as_word(data)
    n0 = len(word)
    if n0 == 0:
        raise EmptyInputError("empty input")

    fact = lz_factorize(word)
    if verify:
        _ensure_valid(validate_factorization(word, fact), "LZ factorization")
    factors_cur, covered = fact.counts()
    free_cur = n0 - covered
    lz_factors = factors_cur
    lz_phrases = factors_cur + free_cur

    allocator = SymbolAllocator(ALPHABET_SIZE)
    rules: List[Rule] = []
    stats: List[PhaseStats] = []
    max_freed = 0
    phase = 0

    while len(word) > 1:
        phase += 1
        len_before = len(word)
        pairing, fact, counters = find_pairing_counted(word, fact, validate=verify)
        if counters.factors_seen != factors_cur:
            raise InvariantError(
                f"phase {phase}: sweep saw {counters.factors_seen} factors, "
                f"expected {factors_cur}"
            )
        if counters.max_freed_per_factor > max_freed:
            max_freed = counters.max_freed_per_factor
        if verify:
            _ensure_valid(
                validate_pairing(word, fact, pairing), f"phase {phase} pairing"
            )
            _ensure_valid(
                validate_factorization(word, fact, require_wide_definitions=True),
                f"phase {phase} repaired factorization",
            )
        factors_mid = factors_cur - counters.factors_dropped
        word, fact, fresh, _ = replace_pairs(
            word, fact, pairing, rules, allocator, dedup, validate=False
        )
        if verify:
            _ensure_valid(
                validate_factorization(word, fact), f"phase {phase} output"
            )
        factors_after, covered = fact.counts()
        free_after = len(word) - covered
        if factors_after != factors_mid:
            raise InvariantError(
                f"phase {phase}: replacement changed the factor count "
                f"{factors_mid} -> {factors_after}"
            )
        st = PhaseStats(
            phase_index=phase,
            len_before=len_before,
            len_after=len(word),
            factors_before=factors_cur,
            factors_after=factors_after,
            free_before=free_cur,
            free_after=free_after,
            free_created_by_pairing=counters.free_created,
            fresh_letters=fresh,
        )
        broken = st.violations(dedup)
        if broken:
            raise InvariantError("; ".join(broken))
        stats.append(st)
        if trace_sink is not None:
            trace_sink.write(json.dumps(st.as_dict(), sort_keys=False) + "\n")
        factors_cur, free_cur = factors_after, free_after

    if phase > phase_budget(n0):
        raise InvariantError(
            f"{phase} phases for length {n0}, above the {phase_budget(n0)} budget"
        )

    slp = Slp(alphabet_size=ALPHABET_SIZE, rules=tuple(rules), start=word[0])
    if verify:
        slp.validate()
    return CompressionResult(
        slp=slp,
        phase_stats=stats,
        lz_phrase_count=lz_phrases,
        lz_factor_count=lz_factors,
        input_length=n0,
        dedup=dedup,
        max_freed_per_factor=max_freed,
    )


def expand(slp: Slp) -> bytes:
    """Expand a straight-line program back into its byte string.

    Iterative throughout: rule lengths are accumulated bottom-up first so
    the output can be preallocated, then an explicit stack walks the start
    symbol down to terminals. No recursion, so grammar depth is unbounded.
    """
    slp.validate()
    base = slp.alphabet_size
    rules = slp.rules

    lengths: List[int] = [0] * len(rules)
    for idx, rule in enumerate(rules):
        left_len = lengths[rule.left - base] if rule.left >= base else 1
        right_len = lengths[rule.right - base] if rule.right >= base else 1
        lengths[idx] = left_len + right_len

    total = lengths[slp.start - base] if slp.start >= base else 1
    out = bytearray(total)
    write = 0
    stack = [slp.start]
    while stack:
        symbol = stack.pop()
        if symbol < base:
            out[write] = symbol
            write += 1
        else:
            rule = rules[symbol - base]
            stack.append(rule.right)
            stack.append(rule.left)
    if write != total:
        raise InvariantError(f"expansion wrote {write} of {total} bytes")
    return bytes(out)


def size_bound_value(input_length: int, lz_phrases: int) -> float:
    """The comparison value l*(1 + log2(max(N/l, 2))) used in reports."""
    ratio = max(input_length / lz_phrases, 2.0)
    return lz_phrases * (1.0 + math.log2(ratio))


def size_budget(input_length: int, lz_phrases: int) -> float:
    """Generous upper budget 6*l*(2 + log2(max(N/l, 2))) + l for the rule
    count, from six freed letters per factor per phase across the phase
    budget."""
    ratio = max(input_length / lz_phrases, 2.0)
    return 6.0 * lz_phrases * (2.0 + math.log2(ratio)) + lz_phrases


def grammar_report(result: CompressionResult) -> dict:
    """Summarize a compression run as a flat JSON-friendly record."""
    slp = result.slp
    rule_count = len(slp.rules)
    terminals = set()
    for rule in slp.rules:
        if rule.left < slp.alphabet_size:
            terminals.add(rule.left)
        if rule.right < slp.alphabet_size:
            terminals.add(rule.right)
    if slp.start < slp.alphabet_size:
        terminals.add(slp.start)
    bound = size_bound_value(result.input_length, result.lz_phrase_count)
    budget = size_budget(result.input_length, result.lz_phrase_count)
    return {
        "input_length": result.input_length,
        "lz_phrases": result.lz_phrase_count,
        "lz_factors": result.lz_factor_count,
        "phases": len(result.phase_stats),
        "phase_budget": phase_budget(result.input_length),
        "rules": rule_count,
        "nonterminals_strict_cnf": rule_count + len(terminals),
        "free_letters_created": sum(
            s.free_created_by_pairing for s in result.phase_stats
        ),
        "max_freed_per_factor": result.max_freed_per_factor,
        "dedup": result.dedup,
        "bound_value": bound,
        "ratio": rule_count / bound if bound else 0.0,
        "rule_budget": budget,
        "within_budget": rule_count <= budget,
    }
