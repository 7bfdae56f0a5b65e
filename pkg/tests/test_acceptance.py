"""Release gate: every guarantee the library makes, checked end to end.

Each test prints one PASS line with the measured numbers once its checks
hold (run with ``pytest tests/test_acceptance.py -s`` to watch them).
The corpora:

* every binary word of length up to 14 (and up to 12 for the reference
  cross-check of the factorizer);
* ten thousand seeded random words over alphabets of 2, 4, 26 and 256
  symbols, lengths up to ten thousand;
* letter runs and Fibonacci words up to a million symbols;
* one real file of several megabytes concatenated from installed Python
  sources, plus its power-of-two prefixes for the timing check.

Compression of every corpus word runs with full per-phase verification
(factorization and pairing validators plus the budget accounting), so a
single run of this file exercises both the results and the invariants.
"""

import io
import math
import random
import statistics
import sysconfig
import time
from pathlib import Path

import pytest

from slpz.fileformat import SlpzFormatError, read_slpz, write_slpz
from slpz.grammar import compress, expand, phase_budget, size_budget
from slpz.lz77 import lz_factorize, naive_lz_factorize
from slpz.model import validate_factorization, validate_pairing
from slpz.pairing import find_pairing_counted
from slpz.replace import SymbolAllocator, replace_pairs

MEBI = 1 << 20


def say(line):
    print(line)


def binary_words(max_len):
    for length in range(1, max_len + 1):
        for bits in range(1 << length):
            yield bytes(97 + ((bits >> k) & 1) for k in range(length))


def fibonacci_words(max_len):
    words = []
    a, b = b"b", b"a"
    while len(b) <= max_len:
        words.append(b)
        a, b = b, b + a
    return words


class Evidence:
    """Aggregated per-phase facts from a batch of compression runs."""

    def __init__(self, name):
        self.name = name
        self.runs = 0
        self.phases = 0
        self.mismatches = []
        self.budget_breaks = []
        self.phase_count_breaks = []
        self.rule_bound_breaks = []
        self.ratios = []
        self.max_freed = 0
        self.max_shrink = 0.0

    def add(self, label, data, result):
        self.runs += 1
        self.phases += len(result.phase_stats)
        if expand(result.slp) != bytes(data):
            self.mismatches.append(label)
        for st in result.phase_stats:
            for message in st.violations(result.dedup):
                self.budget_breaks.append(f"{label}: {message}")
            if st.len_before > 1:
                self.max_shrink = max(
                    self.max_shrink, st.len_after / st.len_before
                )
        if len(result.phase_stats) > phase_budget(result.input_length):
            self.phase_count_breaks.append(label)
        if result.max_freed_per_factor > self.max_freed:
            self.max_freed = result.max_freed_per_factor
        rules = len(result.slp.rules)
        budget = size_budget(result.input_length, result.lz_phrase_count)
        if rules > budget:
            self.rule_bound_breaks.append(f"{label}: {rules} > {budget:.0f}")
        phrases = result.lz_phrase_count
        bound = phrases * (
            1 + math.log2(max(result.input_length / phrases, 2.0))
        )
        self.ratios.append(rules / bound)

    def ratio_summary(self):
        if not self.ratios:
            return "no runs"
        return (
            f"ratio min/median/max = {min(self.ratios):.2f}/"
            f"{statistics.median(self.ratios):.2f}/{max(self.ratios):.2f}"
        )


def checked_compress(data, **kwargs):
    return compress(data, verify=True, **kwargs)


# ---------------------------------------------------------------------------
# Corpora (built once per session)


@pytest.fixture(scope="module")
def exhaustive_evidence():
    evidence = Evidence("exhaustive binary <=14")
    started = time.perf_counter()
    for w in binary_words(14):
        evidence.add(repr(w), w, checked_compress(w))
    evidence.elapsed = time.perf_counter() - started
    return evidence


@pytest.fixture(scope="module")
def random_evidence():
    rng = random.Random(0x5EED)
    evidence = Evidence("random words")
    for alphabet in (2, 4, 26, 256):
        for case in range(2500):
            if case < 2300:
                length = int(200 ** rng.random())
            elif case < 2450:
                length = rng.randint(200, 2000)
            else:
                length = rng.randint(2000, 10_000)
            data = bytes(rng.randrange(alphabet) for _ in range(length))
            label = f"alphabet {alphabet} case {case} len {length}"
            evidence.add(label, data, checked_compress(data))
    return evidence


@pytest.fixture(scope="module")
def structured_evidence():
    evidence = Evidence("runs and Fibonacci words")
    for n in (10, 1000, 10**6):
        data = b"a" * n
        evidence.add(f"run a^{n}", data, checked_compress(data))
    for data in fibonacci_words(10**6):
        evidence.add(f"fibonacci len {len(data)}", data, checked_compress(data))
    return evidence


@pytest.fixture(scope="module")
def real_file(tmp_path_factory):
    stdlib = Path(sysconfig.get_paths()["stdlib"])
    blob = bytearray()
    for source in sorted(stdlib.glob("*.py")):
        blob.extend(source.read_bytes())
        if len(blob) >= 3 * MEBI:
            break
    assert len(blob) >= 2 * MEBI, "not enough installed sources for the corpus"
    path = tmp_path_factory.mktemp("corpus") / "sources.bin"
    path.write_bytes(blob)
    return path


@pytest.fixture(scope="module")
def real_file_evidence(real_file):
    evidence = Evidence("real file")
    data = real_file.read_bytes()[:MEBI]
    evidence.add(f"{real_file.name}[:{MEBI}]", data, checked_compress(data))
    return evidence


# ---------------------------------------------------------------------------
# The gate


def test_round_trip_everywhere(
    exhaustive_evidence, random_evidence, structured_evidence, real_file_evidence
):
    """Compressing and expanding returns the input byte for byte."""
    suites = [
        exhaustive_evidence,
        random_evidence,
        structured_evidence,
        real_file_evidence,
    ]
    for suite in suites:
        assert suite.mismatches == [], suite.mismatches[:3]
    assert exhaustive_evidence.elapsed < 60.0
    total = sum(s.runs for s in suites)
    say(
        f"PASS round trip: {total} inputs restored exactly "
        f"(exhaustive suite {exhaustive_evidence.elapsed:.1f}s)"
    )


def test_factorizer_matches_reference():
    """The suffix-array factorizer and the brute-force one agree exactly."""
    diffs = 0
    cases = 0
    for w in binary_words(12):
        fast, slow = lz_factorize(list(w)), naive_lz_factorize(list(w))
        cases += 1
        if fast.begin != slow.begin or fast.end != slow.end:
            diffs += 1
    rng = random.Random(0xFAC7)
    for case in range(1000):
        alphabet = (2, 4, 26, 256)[case % 4]
        length = rng.randint(1, 2000)
        w = [rng.randrange(alphabet) for _ in range(length)]
        fast, slow = lz_factorize(w), naive_lz_factorize(w)
        cases += 1
        if fast.begin != slow.begin or fast.end != slow.end:
            diffs += 1
    assert diffs == 0
    say(f"PASS factorizer cross-check: {cases} words, 0 disagreements")


def test_pairing_properties_direct():
    """After every sweep the pairing validator finds nothing: pairs are
    adjacent and mutual, no two unpaired letters touch, factors start and
    end on whole pairs and mirror their definitions."""
    rng = random.Random(0xA11)
    words = [bytes(rng.randrange(a) for _ in range(rng.randint(1, 800)))
             for a in (2, 4, 26, 256) for _ in range(60)]
    words += [b"a" * 500, b"ab" * 300, b"abc" * 200]
    words += fibonacci_words(10_000)[-3:]
    sweeps = 0
    for data in words:
        word = list(data)
        fact = lz_factorize(word)
        assert validate_factorization(word, fact) == []
        rules = []
        allocator = SymbolAllocator(256)
        while len(word) > 1:
            pairing, fact, _ = find_pairing_counted(word, fact, validate=False)
            assert validate_pairing(word, fact, pairing) == [], data[:40]
            sweeps += 1
            word, fact, _, _ = replace_pairs(
                word, fact, pairing, rules, allocator, False, validate=False
            )
    say(f"PASS pairing properties: {sweeps} sweeps over {len(words)} words, "
        f"0 violations (plus every verified run above)")


def test_freed_letter_budget(
    exhaustive_evidence, random_evidence, structured_evidence, real_file_evidence
):
    """Each sweep frees at most six letters per factor, in aggregate and
    factor by factor."""
    suites = [
        exhaustive_evidence,
        random_evidence,
        structured_evidence,
        real_file_evidence,
    ]
    worst = 0
    for suite in suites:
        over = [b for b in suite.budget_breaks if "six per factor" in b]
        assert over == [], over[:3]
        worst = max(worst, suite.max_freed)
    assert worst <= 6
    say(f"PASS freed-letter budget: max letters freed by one factor in one "
        f"sweep = {worst} (cap 6)")


def test_phase_accounting(
    exhaustive_evidence, random_evidence, structured_evidence, real_file_evidence
):
    """Every phase shrinks the word to at most (2n+1)/3, preserves the
    factor count through replacement, and mints exactly one fresh letter
    per vanished free-letter pair."""
    suites = [
        exhaustive_evidence,
        random_evidence,
        structured_evidence,
        real_file_evidence,
    ]
    phases = 0
    for suite in suites:
        assert suite.budget_breaks == [], suite.budget_breaks[:3]
        phases += suite.phases
    worst = max(s.max_shrink for s in suites)
    say(f"PASS phase accounting: {phases} phases, worst shrink factor "
        f"{worst:.4f} (cap 0.667)")


def test_phase_count_bound(
    exhaustive_evidence, random_evidence, structured_evidence, real_file_evidence
):
    """No input needs more phases than the geometric-shrink cap allows."""
    suites = [
        exhaustive_evidence,
        random_evidence,
        structured_evidence,
        real_file_evidence,
    ]
    for suite in suites:
        assert suite.phase_count_breaks == [], suite.phase_count_breaks[:3]
    say("PASS phase-count bound: all runs within ceil(log_1.5 N) + 1")


def test_rule_count_bound(
    exhaustive_evidence, random_evidence, structured_evidence, real_file_evidence
):
    """Rule counts stay under the guaranteed budget; measured ratios against
    the comparison value are reported per corpus."""
    suites = [
        exhaustive_evidence,
        random_evidence,
        structured_evidence,
        real_file_evidence,
    ]
    for suite in suites:
        assert suite.rule_bound_breaks == [], suite.rule_bound_breaks[:3]

    run = b"a" * (1 << 20)
    result = compress(run)
    assert result.lz_phrase_count == 2
    rules = len(result.slp.rules)
    assert rules <= 254
    lines = [f"{s.name}: {s.ratio_summary()}" for s in suites]
    say("PASS rule-count bound: " + "; ".join(lines)
        + f"; run of 2^20 letters -> {rules} rules (cap 254)")


def test_compression_speed(real_file):
    """A mebibyte compresses in seconds, and doubling the input roughly
    doubles the time (soft ratio, reported but not asserted)."""
    blob = real_file.read_bytes()
    t = {}
    for exp in (20, 21):
        data = blob[: 1 << exp]
        started = time.perf_counter()
        result = compress(data)
        t[exp] = time.perf_counter() - started
        assert expand(result.slp) == data
    assert t[20] < 10.0
    say(f"PASS speed: 2^20 bytes in {t[20]:.2f}s (limit 10s); "
        f"2^21 in {t[21]:.2f}s, ratio {t[21] / t[20]:.2f} (soft target <=2.6)")


def test_container_format(real_file):
    """Files survive the container byte for byte, and each malformed-file
    class is rejected with its named error."""
    samples = [
        b"abab",
        b"a",
        bytes(random.Random(5).randrange(256) for _ in range(4096)),
        real_file.read_bytes()[: 1 << 18],
    ]
    for data in samples:
        result = compress(data)
        buf = io.BytesIO()
        write_slpz(result.slp, result.input_length, buf)
        slp, length = read_slpz(io.BytesIO(buf.getvalue()))
        assert expand(slp) == data and length == len(data)
        again = io.BytesIO()
        write_slpz(slp, length, again)
        assert again.getvalue() == buf.getvalue()

    abab = (
        b"SLPZ 1\nalphabet 256\nlength 4\nstart 257\nrules 2\n"
        b"256 97 98\n257 256 256\n"
    )
    hits = 0
    for broken, needle in [
        (abab.replace(b"SLPZ", b"SLPX"), "bad magic"),
        (abab.replace(b"256 97 98", b"256 300 98"), "forward reference"),
        (abab.replace(b"257 256 256", b"259 256 256"), "id gap"),
        (abab[:-1], "truncated"),
        (abab.replace(b"rules 2\n256 97 98\n", b"rules 2\n"), "truncated"),
    ]:
        with pytest.raises(SlpzFormatError, match=needle):
            read_slpz(io.BytesIO(broken))
        hits += 1
    say(f"PASS container format: {len(samples)} byte-exact round trips, "
        f"{hits} malformed classes rejected by name")
