"""Greedy leftmost LZ factorization, plus a brute-force oracle.

The fast path builds a suffix array (prefix doubling on numpy argsort,
O(n log n)), derives the LCP array with Kasai's algorithm, and walks the
word left to right: at each position the longest earlier match is found by
direct extension against the nearest-smaller-position neighbours in suffix
order, which is where the longest previous factor always lives. Matches of
length 0 or 1 become free letters, longer ones become factors.

Among equal-length matches the factorizer commits to the smallest starting
position. Those positions are resolved offline in one vectorized batch:
every occurrence of a factor's prefix lies in a contiguous suffix-array
interval, whose boundaries are found by binary-lifted jumps over a sparse
min-table of the LCP array; a range-minimum over the suffix positions in
the interval is then the leftmost occurrence.

``naive_lz_factorize`` answers the same contract by direct scanning and
shares no code with the fast path; the two are cross-checked in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from .model import EmptyInputError, Factorization

_NAIVE_SA_CUTOFF = 64


@dataclass
class SuffixArrayBundle:
    """Suffix array with the companions needed for match queries.

    ``sa`` lists suffix start positions in increasing lexicographic order,
    ``rank`` is its inverse, and ``lcp[k]`` is the common prefix length of
    the suffixes at ``sa[k-1]`` and ``sa[k]`` (``lcp[0]`` is 0).
    """

    sa: List[int]
    rank: List[int]
    lcp: List[int]


def build_suffix_array(word: Sequence[int]) -> SuffixArrayBundle:
    """Sort all suffixes of ``word`` and return the bundle."""
    n = len(word)
    if n == 0:
        raise EmptyInputError("cannot build a suffix array of the empty word")
    if n <= _NAIVE_SA_CUTOFF:
        seq = list(word)
        sa = sorted(range(n), key=lambda i: seq[i:])
    else:
        sa = _doubling_suffix_array(word)
    rank = [0] * n
    for k, pos in enumerate(sa):
        rank[pos] = k
    lcp = _kasai_lcp(word, sa, rank)
    return SuffixArrayBundle(sa=sa, rank=rank, lcp=lcp)


def _dense_rank(sa: np.ndarray, ordered: np.ndarray) -> np.ndarray:
    n = sa.shape[0]
    rank = np.empty(n, dtype=np.int64)
    rank[sa] = np.concatenate(([0], np.cumsum(np.diff(ordered) > 0)))
    return rank


def _doubling_suffix_array(word: Sequence[int]) -> List[int]:
    # Rank pairs (rank[i], rank[i+k]) with doubling k; argsort with a stable
    # integer sort keeps each round O(n). Ranks stay below n, so the packed
    # key rank*(n+1) + rank2 fits comfortably in int64 even at tens of MB.
    arr = np.asarray(word, dtype=np.int64)
    n = arr.shape[0]
    if 0 <= arr.min() and arr.max() < 256:
        # Byte alphabet: seed the ranks from 7-byte windows (values shifted
        # by one so padding past the end sorts before any real byte; 7
        # nine-bit digits fill the int64), skipping the first doubling
        # rounds outright.
        key = np.zeros(n, dtype=np.int64)
        for t in range(7):
            key <<= 9
            key[: n - t] |= arr[t:] + 1
        k = 7
    else:
        _, key = np.unique(arr, return_inverse=True)
        key = key.astype(np.int64, copy=False)
        k = 1
    sa = np.argsort(key, kind="stable")
    rank = _dense_rank(sa, key[sa])
    while rank[sa[-1]] != n - 1:
        key2 = np.zeros(n, dtype=np.int64)
        key2[:-k] = rank[k:] + 1
        combined = rank * (n + 1) + key2
        sa = np.argsort(combined, kind="stable")
        rank = _dense_rank(sa, combined[sa])
        k *= 2
    return sa.tolist()


def _kasai_lcp(word: Sequence[int], sa: List[int], rank: List[int]) -> List[int]:
    n = len(sa)
    lcp = [0] * n
    h = 0
    for i in range(n):
        r = rank[i]
        if r == 0:
            h = 0
            continue
        j = sa[r - 1]
        while i + h < n and j + h < n and word[i + h] == word[j + h]:
            h += 1
        lcp[r] = h
        if h:
            h -= 1
    return lcp


def _nearest_smaller_positions(sa: List[int]) -> tuple:
    """For each text position, its nearest smaller position on either side
    in suffix order (-1 where none exists)."""
    n = len(sa)
    psv = [-1] * n
    nsv = [-1] * n
    stack: List[int] = []
    for pos in sa:
        while stack and stack[-1] > pos:
            nsv[stack.pop()] = pos
        if stack:
            psv[pos] = stack[-1]
        stack.append(pos)
    return psv, nsv


def _match_length(word: Sequence[int], j: int, i: int, n: int) -> int:
    t = 0
    while i + t < n and word[j + t] == word[i + t]:
        t += 1
    return t


def lz_factorize(word: Sequence[int]) -> Factorization:
    """Greedy leftmost factorization via the suffix array.

    At each position the longest match starting strictly earlier is taken
    (the match may overlap the position itself); if its length is at most 1
    the position stays a free letter. Ties between equal-length matches go
    to the smallest definition position.
    """
    n = len(word)
    if n == 0:
        raise EmptyInputError("cannot factorize the empty word")
    fact = Factorization.all_free(n)
    if n == 1:
        return fact
    bundle = build_suffix_array(word)
    sa, rank, lcp = bundle.sa, bundle.rank, bundle.lcp
    psv, nsv = _nearest_smaller_positions(sa)

    # First pass: phrase boundaries and lengths. The longest earlier match
    # extends from one of the two nearest-smaller-position neighbours.
    queries: List[tuple] = []  # (length, SA slot, factor start)
    i = 0
    while i < n:
        best = 0
        j = psv[i]
        if j >= 0:
            best = _match_length(word, j, i, n)
        j = nsv[i]
        if j >= 0:
            other = _match_length(word, j, i, n)
            if other > best:
                best = other
        if best <= 1:
            i += 1
        else:
            queries.append((best, rank[i], i))
            fact.end[i + best - 1] = True
            i += best

    if queries:
        _resolve_leftmost_definitions(fact, sa, lcp, queries)
    return fact


def _min_table(values: np.ndarray) -> List[np.ndarray]:
    """Sparse table: level t holds the min over windows of length 2^t."""
    tables = [values]
    step = 1
    while 2 * step <= values.shape[0]:
        prev = tables[-1]
        tables.append(np.minimum(prev[:-step], prev[step:]))
        step *= 2
    return tables


def _resolve_leftmost_definitions(
    fact: Factorization, sa: List[int], lcp: List[int], queries: List[tuple]
) -> None:
    """Fill ``fact.begin`` with the smallest definition position per factor.

    Positions sharing a prefix of length at least L with a factor form a
    contiguous suffix-array interval: the maximal run of slots around the
    factor's own slot whose internal LCP values all reach L. The interval
    ends are found with binary-lifted jumps over a sparse min-table of the
    LCP array (all queries advanced together, one numpy step per level),
    and the answer is the range-minimum of suffix positions over that
    interval. lcp[0] is 0, below every query length, so the jumps can never
    fall off the left end.
    """
    n = len(sa)
    q = len(queries)
    length_arr = np.fromiter((t[0] for t in queries), np.int64, q)
    slot_arr = np.fromiter((t[1] for t in queries), np.int64, q)

    lcp_arr = np.asarray(lcp, dtype=np.int32)
    lcp_levels = _min_table(lcp_arr)

    lo = slot_arr.copy()
    hi = slot_arr.copy()
    for t in range(len(lcp_levels) - 1, -1, -1):
        step = 1 << t
        table = lcp_levels[t]
        can = lo >= step
        idx = np.where(can, lo - step + 1, 0)
        ok = can & (table[idx] >= length_arr)
        lo = np.where(ok, lo - step, lo)
        can = hi + 1 <= n - step
        idx = np.where(can, hi + 1, 0)
        ok = can & (table[idx] >= length_arr)
        hi = np.where(ok, hi + step, hi)
    del lcp_levels

    sa_levels = _min_table(np.asarray(sa, dtype=np.int32))
    widths = hi - lo + 1
    levels = np.frexp(widths.astype(np.float64))[1] - 1
    answer = np.empty(q, dtype=np.int64)
    for value in np.unique(levels):
        table = sa_levels[value]
        mask = levels == value
        span = (1 << int(value)) - 1
        answer[mask] = np.minimum(
            table[lo[mask]], table[hi[mask] - span]
        )

    begin = fact.begin
    for (_, _, start), j in zip(queries, answer.tolist()):
        assert j < start, "definition must start strictly earlier"
        begin[start] = j


def naive_lz_factorize(word: Sequence[int]) -> Factorization:
    """Brute-force reference factorizer with the same contract as
    ``lz_factorize``.

    Byte-valued words go through ``bytes.find`` (still a direct scan, just
    not a character-at-a-time Python loop); anything else falls back to
    quadratic comparison. Intended for cross-validation on short inputs.
    """
    n = len(word)
    if n == 0:
        raise EmptyInputError("cannot factorize the empty word")
    if all(0 <= c <= 255 for c in word):
        return _naive_bytes(bytes(word))
    return _naive_generic(word)


def _naive_bytes(data: bytes) -> Factorization:
    n = len(data)
    fact = Factorization.all_free(n)
    i = 0
    while i < n:
        length = 0
        j = -1
        # A match of length L+1 inside data[0:i+L] is exactly a match
        # starting at or before i-1, overlap included; find() returns the
        # leftmost one.
        while i + length < n:
            cand = data.find(data[i : i + length + 1], 0, i + length)
            if cand < 0:
                break
            j = cand
            length += 1
        if length <= 1:
            i += 1
        else:
            fact.begin[i] = j
            fact.end[i + length - 1] = True
            i += length
    return fact


def _naive_generic(word: Sequence[int]) -> Factorization:
    n = len(word)
    fact = Factorization.all_free(n)
    i = 0
    while i < n:
        best_len = 0
        best_j = -1
        for j in range(i):
            if word[j] != word[i]:
                continue
            t = 1
            while i + t < n and word[j + t] == word[i + t]:
                t += 1
            if t > best_len:
                best_len = t
                best_j = j
        if best_len <= 1:
            i += 1
        else:
            fact.begin[i] = best_j
            fact.end[i + best_len - 1] = True
            i += best_len
    return fact
