"""Per-phase reporting: a CSV of phase statistics plus rendered figures.

The CSV holds exactly the per-phase counters (same keys as the JSONL
trace); the figures put them against their theoretical envelopes so a
regression is visible at a glance: word-length decay against the (2/3)^k
line, freed letters per phase against the six-per-factor budget, and the
cumulative rule count.
"""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Dict

from .grammar import CompressionResult

TRACE_FIELDS = [
    "phase",
    "len_before",
    "len_after",
    "factors_before",
    "factors_after",
    "free_before",
    "free_after",
    "free_created_by_pairing",
    "fresh_letters",
]


def write_report(result: CompressionResult, out_dir: Path) -> Dict[str, Path]:
    """Write phases.csv and the three figures into ``out_dir``.

    Returns a mapping from artifact name to its path.
    """
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    stats = result.phase_stats
    written: Dict[str, Path] = {}

    csv_path = out_dir / "phases.csv"
    with open(csv_path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=TRACE_FIELDS)
        writer.writeheader()
        for st in stats:
            writer.writerow(st.as_dict())
    written["phases"] = csv_path

    phases = [st.phase_index for st in stats]
    n0 = result.input_length

    fig, ax = plt.subplots(figsize=(6, 4))
    ax.semilogy(phases, [st.len_after for st in stats], "o-", label="word length")
    ax.semilogy(
        phases,
        [max(n0 * (2 / 3) ** k, 1) for k in phases],
        "--",
        color="gray",
        label="(2/3)^k envelope",
    )
    ax.set_xlabel("phase")
    ax.set_ylabel("length after phase")
    ax.set_title("Word length decay")
    ax.legend()
    fig.tight_layout()
    path = out_dir / "length_decay.png"
    fig.savefig(path, dpi=120)
    plt.close(fig)
    written["length_decay"] = path

    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(phases, [st.free_created_by_pairing for st in stats], label="freed letters")
    ax.plot(
        phases,
        [6 * st.factors_before for st in stats],
        "r--",
        label="budget (6 per factor)",
    )
    ax.set_xlabel("phase")
    ax.set_ylabel("letters freed by the sweep")
    ax.set_title("Freed letters vs. budget")
    ax.legend()
    fig.tight_layout()
    path = out_dir / "freed_letters.png"
    fig.savefig(path, dpi=120)
    plt.close(fig)
    written["freed_letters"] = path

    fig, ax = plt.subplots(figsize=(6, 4))
    cumulative = []
    total = 0
    for st in stats:
        total += st.fresh_letters
        cumulative.append(total)
    ax.plot(phases, cumulative, "o-")
    ax.set_xlabel("phase")
    ax.set_ylabel("rules so far")
    ax.set_title("Cumulative grammar rules")
    fig.tight_layout()
    path = out_dir / "rule_growth.png"
    fig.savefig(path, dpi=120)
    plt.close(fig)
    written["rule_growth"] = path

    return written
