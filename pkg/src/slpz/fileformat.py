"""Reading and writing the SLPZ v1 container.

A deliberately plain text format, one fact per line, so damaged files can
be inspected with any pager:

    SLPZ 1
    alphabet 256
    length <N>
    start <id>
    rules <m>
    <lhs> <left> <right>     (m lines, lhs strictly consecutive from 256)

Lines end with LF and the file ends with a trailing newline. Files are
read and written in binary mode so output is byte-identical across
platforms.
"""

from __future__ import annotations

from typing import BinaryIO, Tuple

from .model import Rule, Slp

MAGIC = "SLPZ 1"


class SlpzFormatError(ValueError):
    """A file does not parse as SLPZ v1; the message names the line."""


def write_slpz(slp: Slp, input_length: int, fh: BinaryIO) -> None:
    """Serialize ``slp`` to an open binary file."""
    slp.validate()
    lines = [
        MAGIC,
        f"alphabet {slp.alphabet_size}",
        f"length {input_length}",
        f"start {slp.start}",
        f"rules {len(slp.rules)}",
    ]
    lines.extend(f"{r.lhs} {r.left} {r.right}" for r in slp.rules)
    fh.write("\n".join(lines).encode("ascii") + b"\n")


def _field(lines: list, index: int, name: str) -> int:
    if index >= len(lines):
        raise SlpzFormatError(f"truncated file: missing '{name}' line {index + 1}")
    parts = lines[index].split()
    if len(parts) != 2 or parts[0] != name:
        raise SlpzFormatError(f"line {index + 1}: expected '{name} <value>'")
    try:
        value = int(parts[1])
    except ValueError:
        raise SlpzFormatError(f"line {index + 1}: '{name}' value is not an integer")
    return value


def read_slpz(fh: BinaryIO) -> Tuple[Slp, int]:
    """Parse an SLPZ v1 file, returning the program and the declared
    original length. Raises SlpzFormatError with the offending line on any
    deviation from the format."""
    raw = fh.read()
    try:
        text = raw.decode("ascii")
    except UnicodeDecodeError:
        raise SlpzFormatError("bad magic: not an SLPZ text file")
    if not text.startswith(MAGIC + "\n"):
        raise SlpzFormatError(f"bad magic: first line must be '{MAGIC}'")
    if not text.endswith("\n"):
        raise SlpzFormatError("truncated file: missing trailing newline")
    lines = text.split("\n")[:-1]

    alphabet = _field(lines, 1, "alphabet")
    if alphabet < 1:
        raise SlpzFormatError("line 2: alphabet size must be positive")
    length = _field(lines, 2, "length")
    if length < 1:
        raise SlpzFormatError("line 3: length must be at least 1")
    start = _field(lines, 3, "start")
    rule_count = _field(lines, 4, "rules")
    if rule_count < 0:
        raise SlpzFormatError("line 5: rule count cannot be negative")

    if len(lines) < 5 + rule_count:
        raise SlpzFormatError(
            f"truncated file: {rule_count} rules declared, "
            f"{len(lines) - 5} rule lines present"
        )
    if len(lines) > 5 + rule_count:
        raise SlpzFormatError(f"line {5 + rule_count + 1}: trailing data")

    rules = []
    for idx in range(rule_count):
        lineno = 6 + idx
        parts = lines[5 + idx].split()
        if len(parts) != 3:
            raise SlpzFormatError(f"line {lineno}: expected '<lhs> <left> <right>'")
        try:
            lhs, left, right = (int(p) for p in parts)
        except ValueError:
            raise SlpzFormatError(f"line {lineno}: rule fields must be integers")
        expected = alphabet + idx
        if lhs != expected:
            raise SlpzFormatError(
                f"line {lineno}: id gap: lhs {lhs}, expected {expected}"
            )
        for ref in (left, right):
            if not 0 <= ref < lhs:
                raise SlpzFormatError(
                    f"line {lineno}: forward reference: {ref} is not defined "
                    f"before rule {lhs}"
                )
        rules.append(Rule(lhs, left, right))

    if not 0 <= start < alphabet + rule_count:
        raise SlpzFormatError(f"line 4: start symbol {start} out of range")

    slp = Slp(alphabet_size=alphabet, rules=tuple(rules), start=start)
    slp.validate()
    return slp, length
