"""SLPZ container serialization: byte-exact output, strict parsing."""

import io

import pytest

from slpz.fileformat import SlpzFormatError, read_slpz, write_slpz
from slpz.grammar import compress, expand
from slpz.model import Rule, Slp

ABAB_SLP = Slp(256, (Rule(256, 97, 98), Rule(257, 256, 256)), 257)
ABAB_FILE = (
    b"SLPZ 1\n"
    b"alphabet 256\n"
    b"length 4\n"
    b"start 257\n"
    b"rules 2\n"
    b"256 97 98\n"
    b"257 256 256\n"
)


def parse(raw):
    return read_slpz(io.BytesIO(raw))


def test_write_is_byte_exact():
    buf = io.BytesIO()
    write_slpz(ABAB_SLP, 4, buf)
    assert buf.getvalue() == ABAB_FILE


def test_read_back():
    slp, length = parse(ABAB_FILE)
    assert slp == ABAB_SLP
    assert length == 4


def test_round_trip_through_bytes():
    data = b"the rain in spain stays mainly in the plain"
    result = compress(data)
    buf = io.BytesIO()
    write_slpz(result.slp, result.input_length, buf)
    slp, length = parse(buf.getvalue())
    assert length == len(data)
    assert expand(slp) == data
    second = io.BytesIO()
    write_slpz(slp, length, second)
    assert second.getvalue() == buf.getvalue()


def test_terminal_start_symbol():
    buf = io.BytesIO()
    write_slpz(Slp(256, (), 97), 1, buf)
    slp, length = parse(buf.getvalue())
    assert slp.start == 97 and slp.rules == () and length == 1


def test_write_refuses_malformed_program():
    with pytest.raises(ValueError):
        write_slpz(Slp(256, (Rule(300, 0, 0),), 300), 1, io.BytesIO())


# ---------------------------------------------------------------------------
# Malformed files


def test_bad_magic():
    with pytest.raises(SlpzFormatError, match="bad magic"):
        parse(b"SLPX 1\nalphabet 256\n")
    with pytest.raises(SlpzFormatError, match="bad magic"):
        parse(b"\x89PNG\r\n\x1a\n")
    with pytest.raises(SlpzFormatError, match="bad magic"):
        parse(b"")


def test_missing_trailing_newline():
    with pytest.raises(SlpzFormatError, match="truncated"):
        parse(ABAB_FILE[:-1])


def test_missing_rule_lines():
    truncated = b"".join(ABAB_FILE.splitlines(keepends=True)[:-1])
    with pytest.raises(SlpzFormatError, match="truncated"):
        parse(truncated)


def test_missing_header_line():
    with pytest.raises(SlpzFormatError, match="truncated"):
        parse(b"SLPZ 1\nalphabet 256\nlength 4\n")


def test_trailing_data():
    with pytest.raises(SlpzFormatError, match="trailing data"):
        parse(ABAB_FILE + b"extra\n")


def test_id_gap():
    broken = ABAB_FILE.replace(b"257 256 256", b"258 256 256")
    with pytest.raises(SlpzFormatError, match="id gap"):
        parse(broken)


def test_forward_reference():
    raw = (
        b"SLPZ 1\nalphabet 256\nlength 2\nstart 256\nrules 1\n"
        b"256 300 97\n"
    )
    with pytest.raises(SlpzFormatError, match="forward reference"):
        parse(raw)


def test_rule_referencing_itself():
    raw = (
        b"SLPZ 1\nalphabet 256\nlength 2\nstart 256\nrules 1\n"
        b"256 256 97\n"
    )
    with pytest.raises(SlpzFormatError, match="forward reference"):
        parse(raw)


def test_non_integer_fields():
    with pytest.raises(SlpzFormatError, match="not an integer"):
        parse(b"SLPZ 1\nalphabet x\nlength 4\nstart 257\nrules 0\n")
    broken = ABAB_FILE.replace(b"256 97 98", b"256 97 b")
    with pytest.raises(SlpzFormatError, match="integers"):
        parse(broken)


def test_wrong_header_field_order():
    raw = b"SLPZ 1\nlength 4\nalphabet 256\nstart 257\nrules 0\n"
    with pytest.raises(SlpzFormatError, match="expected 'alphabet"):
        parse(raw)


def test_start_out_of_range():
    raw = b"SLPZ 1\nalphabet 256\nlength 1\nstart 900\nrules 0\n"
    with pytest.raises(SlpzFormatError, match="out of range"):
        parse(raw)


def test_rule_line_with_wrong_arity():
    broken = ABAB_FILE.replace(b"256 97 98", b"256 97")
    with pytest.raises(SlpzFormatError, match="expected '<lhs>"):
        parse(broken)


def test_error_messages_carry_line_numbers():
    broken = ABAB_FILE.replace(b"257 256 256", b"259 256 256")
    with pytest.raises(SlpzFormatError, match="line 7"):
        parse(broken)
