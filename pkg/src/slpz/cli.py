"""Command-line front end.

Subcommands: ``compress`` and ``decompress`` move between raw bytes and
SLPZ files, ``report`` additionally renders per-phase statistics (CSV and
figures), and ``selftest`` runs the built-in cross-checks.

Exit codes: 0 success, 1 domain error (empty input, malformed file,
broken invariant), 2 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from .fileformat import SlpzFormatError, read_slpz, write_slpz
from .grammar import compress, expand, grammar_report
from .model import EmptyInputError, InvariantError
from .report import write_report
from .selftest import run_selftest

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_IO = 2


def _fail(message: str) -> None:
    print(f"slpz: {message}", file=sys.stderr)


def _read_input(path: str) -> Optional[bytes]:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        _fail(f"cannot read {path}: {exc}")
        return None


def cmd_compress(
    input_path: str,
    output_path: str,
    dedup: bool = False,
    trace_path: Optional[str] = None,
    stats: bool = False,
) -> int:
    data = _read_input(input_path)
    if data is None:
        return EXIT_IO
    if not data:
        _fail("empty input")
        return EXIT_DOMAIN

    trace_fh = None
    if trace_path is not None:
        try:
            trace_fh = open(trace_path, "w")
        except OSError as exc:
            _fail(f"cannot open trace file {trace_path}: {exc}")
            return EXIT_IO
    try:
        result = compress(data, dedup=dedup, trace_sink=trace_fh)
    except (EmptyInputError, InvariantError, ValueError) as exc:
        _fail(str(exc))
        return EXIT_DOMAIN
    finally:
        if trace_fh is not None:
            trace_fh.close()

    try:
        with open(output_path, "wb") as fh:
            write_slpz(result.slp, result.input_length, fh)
    except OSError as exc:
        _fail(f"cannot write {output_path}: {exc}")
        return EXIT_IO
    if stats:
        print(json.dumps(grammar_report(result)))
    return EXIT_OK


def cmd_decompress(input_path: str, output_path: str) -> int:
    try:
        with open(input_path, "rb") as fh:
            slp, declared_length = read_slpz(fh)
    except OSError as exc:
        _fail(f"cannot read {input_path}: {exc}")
        return EXIT_IO
    except SlpzFormatError as exc:
        _fail(str(exc))
        return EXIT_DOMAIN

    try:
        data = expand(slp)
    except (ValueError, InvariantError) as exc:
        _fail(str(exc))
        return EXIT_DOMAIN
    if len(data) != declared_length:
        _fail(
            f"length mismatch: header declares {declared_length}, "
            f"grammar expands to {len(data)}"
        )
        return EXIT_DOMAIN

    try:
        Path(output_path).write_bytes(data)
    except OSError as exc:
        _fail(f"cannot write {output_path}: {exc}")
        return EXIT_IO
    return EXIT_OK


def cmd_report(
    input_path: str, out_dir: str, dedup: bool = False
) -> int:
    data = _read_input(input_path)
    if data is None:
        return EXIT_IO
    if not data:
        _fail("empty input")
        return EXIT_DOMAIN
    try:
        result = compress(data, dedup=dedup)
    except (EmptyInputError, InvariantError, ValueError) as exc:
        _fail(str(exc))
        return EXIT_DOMAIN
    try:
        written = write_report(result, Path(out_dir))
    except OSError as exc:
        _fail(f"cannot write report to {out_dir}: {exc}")
        return EXIT_IO
    summary = grammar_report(result)
    summary["artifacts"] = {name: str(path) for name, path in written.items()}
    print(json.dumps(summary))
    return EXIT_OK


def cmd_selftest(limit: int, seed: int, random_cases: int) -> int:
    return run_selftest(limit=limit, seed=seed, random_cases=random_cases)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="slpz",
        description="Grammar compression: byte strings to straight-line programs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compress", help="compress a file to SLPZ")
    p.add_argument("input", help="input file")
    p.add_argument("output", help="output SLPZ file")
    p.add_argument(
        "--dedup",
        action="store_true",
        help="reuse one fresh letter per distinct pair within a phase",
    )
    p.add_argument(
        "--trace", metavar="PATH", help="write per-phase statistics as JSON lines"
    )
    p.add_argument(
        "--stats", action="store_true", help="print a summary report as JSON"
    )

    p = sub.add_parser("decompress", help="expand an SLPZ file back to bytes")
    p.add_argument("input", help="input SLPZ file")
    p.add_argument("output", help="output file")

    p = sub.add_parser(
        "report", help="compress and write per-phase CSV and figures"
    )
    p.add_argument("input", help="input file")
    p.add_argument(
        "--out-dir", default="slpz-report", help="directory for CSV and figures"
    )
    p.add_argument("--dedup", action="store_true", help="see compress --dedup")

    p = sub.add_parser("selftest", help="run the built-in cross-checks")
    p.add_argument(
        "--limit",
        type=int,
        default=10,
        help="exhaustive binary-word length cap (0 skips the exhaustive suite)",
    )
    p.add_argument("--seed", type=int, default=42, help="random corpus seed")
    p.add_argument(
        "--random-cases", type=int, default=250, help="random corpus size"
    )
    return parser


def main(argv: Optional[list] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "compress":
        return cmd_compress(
            args.input, args.output, args.dedup, args.trace, args.stats
        )
    if args.command == "decompress":
        return cmd_decompress(args.input, args.output)
    if args.command == "report":
        return cmd_report(args.input, args.out_dir, args.dedup)
    if args.command == "selftest":
        return cmd_selftest(args.limit, args.seed, args.random_cases)
    raise AssertionError(f"unhandled command {args.command}")


if __name__ == "__main__":
    sys.exit(main())
