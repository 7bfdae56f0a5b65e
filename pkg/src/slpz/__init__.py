"""Grammar compression by LZ-guided pair replacement.

The toolkit turns a byte string into a small straight-line program: an
LZ factorization bounds how much structure the input has, and repeated
pairing-and-replacement phases turn that structure into binary grammar
rules. See README.md for the file format and CLI.
"""

from .model import (
    ALPHABET_SIZE,
    EmptyInputError,
    Factorization,
    InvariantError,
    Pairing,
    PhaseStats,
    Rule,
    Slp,
    Violation,
    validate_factorization,
    validate_pairing,
)
from .lz77 import build_suffix_array, lz_factorize, naive_lz_factorize
from .pairing import find_pairing
from .replace import replace_pairs
from .grammar import CompressionResult, compress, expand, grammar_report
from .fileformat import SlpzFormatError, read_slpz, write_slpz

__version__ = "0.1.0"

__all__ = [
    "ALPHABET_SIZE",
    "CompressionResult",
    "EmptyInputError",
    "Factorization",
    "InvariantError",
    "Pairing",
    "PhaseStats",
    "Rule",
    "Slp",
    "SlpzFormatError",
    "Violation",
    "build_suffix_array",
    "compress",
    "expand",
    "find_pairing",
    "grammar_report",
    "lz_factorize",
    "naive_lz_factorize",
    "read_slpz",
    "replace_pairs",
    "validate_factorization",
    "validate_pairing",
    "write_slpz",
]
