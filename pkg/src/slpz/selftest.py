"""Built-in cross-checks: oracle equivalence, invariants, round trips.

Kept importable (and CLI-reachable) rather than test-suite-only so a
deployed copy can vouch for itself on the machine it runs on.
"""

from __future__ import annotations

import random
import sys
from dataclasses import dataclass, field
from typing import IO, List, Optional

from .grammar import compress, expand
from .lz77 import lz_factorize, naive_lz_factorize

_NAIVE_CHECK_MAX_LEN = 400


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: List[str] = field(default_factory=list)

    def record(self, message: str) -> None:
        self.failures.append(message)


def _check_word(word: bytes, suite: SuiteResult, check_oracle: bool) -> None:
    suite.cases += 1
    try:
        if check_oracle:
            fast = lz_factorize(list(word))
            slow = naive_lz_factorize(list(word))
            if fast.begin != slow.begin or fast.end != slow.end:
                suite.record(f"word={word!r}: factorizer disagrees with oracle")
                return
        result = compress(word, verify=True)
        restored = expand(result.slp)
        if restored != word:
            suite.record(f"word={word!r}: round trip produced {restored!r}")
    except Exception as exc:  # noqa: BLE001 - report, do not crash the suite
        suite.record(f"word={word!r}: {type(exc).__name__}: {exc}")


def _exhaustive_binary(limit: int) -> List[bytes]:
    words = []
    for length in range(1, limit + 1):
        for bits in range(1 << length):
            words.append(
                bytes(97 + ((bits >> k) & 1) for k in range(length))
            )
    return words


def _random_word(rng: random.Random, case_index: int) -> bytes:
    length = 1 + int(500 * rng.random() ** 2)
    if case_index % 10 == 9:
        # Run-heavy adversarial shape: a few long runs glued together.
        chunks = []
        while sum(len(c) for c in chunks) < length:
            chunks.append(bytes([rng.randrange(3)]) * rng.randint(1, 60))
        return b"".join(chunks)[:length]
    alphabet = (2, 4, 26, 256)[case_index % 4]
    return bytes(rng.randrange(alphabet) for _ in range(length))


def run_selftest(
    limit: int = 10,
    seed: int = 42,
    random_cases: int = 250,
    out: Optional[IO[str]] = None,
) -> int:
    """Run the exhaustive and randomized suites; 0 means everything passed.

    ``limit`` caps the exhaustive binary-word length (0 skips it); the
    randomized suite draws ``random_cases`` words from the given seed.
    ``out`` defaults to the current standard output.
    """
    if out is None:
        out = sys.stdout
    exhaustive = SuiteResult("exhaustive-binary")
    for word in _exhaustive_binary(limit):
        _check_word(word, exhaustive, check_oracle=len(word) <= 12)

    randomized = SuiteResult("random-corpus")
    rng = random.Random(seed)
    for case in range(random_cases):
        word = _random_word(rng, case)
        _check_word(word, randomized, check_oracle=len(word) <= _NAIVE_CHECK_MAX_LEN)

    suites = [exhaustive, randomized]
    print(f"{'suite':<20} {'cases':>8} {'failed':>8}", file=out)
    for suite in suites:
        print(
            f"{suite.name:<20} {suite.cases:>8} {len(suite.failures):>8}",
            file=out,
        )
    failed = [s for s in suites if s.failures]
    if failed:
        print("first failure: " + failed[0].failures[0], file=out)
        return 1
    return 0
