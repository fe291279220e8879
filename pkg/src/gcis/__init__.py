"""Grammar compression by induced suffix sorting (GCIS).

The input is factorized into LMS-substrings, each distinct factor becomes a
rule, and the sequence of factor names is factorized again until the
factors stop repeating. Rule dictionaries are front coded, with lcp values
and tail lengths in Simple8b and tail symbols bit packed.

>>> import gcis
>>> gcis.decompress(gcis.compress(b"banana"))
b'banana'
"""

from .codec import deserialize, serialize
from .decoder import decompress, expand_grammar
from .errors import (
    BadMagicError,
    CorruptArchiveError,
    GCISError,
    MalformedTextError,
    RangeError,
    TruncatedArchiveError,
    UnencodableValueError,
    UnsupportedVersionError,
)
from .grammar import Grammar, LevelDictionary, Rule
from .grammar_builder import build_grammar, compress_text, reduce_once
from .text_model import Text, from_bytes, to_bytes

__version__ = "0.1.0"


def compress(data, max_levels=None, greedy_stop=True) -> bytes:
    """Compress ``data`` (bytes-like) into a self-contained archive."""
    return serialize(compress_text(data, max_levels=max_levels, greedy_stop=greedy_stop))


__all__ = [
    "BadMagicError", "CorruptArchiveError", "GCISError", "Grammar", "LevelDictionary",
    "MalformedTextError", "RangeError", "Rule", "Text", "TruncatedArchiveError",
    "UnencodableValueError", "UnsupportedVersionError", "build_grammar", "compress",
    "compress_text", "decompress", "deserialize", "expand_grammar", "from_bytes",
    "reduce_once", "serialize", "to_bytes",
]
