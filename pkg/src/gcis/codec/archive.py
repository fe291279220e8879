"""Byte layout of level blocks and of the whole archive.

Archive::

    "GCIS" | version u8 | original_len u64 | level_count u16
    final text block: count u64 | alphabet_size u64 | packed symbols
    level blocks, last level first

Level block::

    sigma u64 | rhs_alphabet_size u64 | prefix_len u64
    L: word count u64 + Simple8b words       (lcp per rule)
    S: word count u64 + Simple8b words       (tail length per rule)
    R: symbol count u64 + packed tail symbols
    prefix rule symbols, packed

All integers are little-endian; packed arrays use ``symbol_width`` of the
relevant alphabet and occupy whole 64-bit words. The final text is stored
without its sentinel.
"""

from __future__ import annotations

import struct

import numpy as np

from ..errors import (
    BadMagicError,
    CorruptArchiveError,
    TruncatedArchiveError,
    UnsupportedVersionError,
)
from ..grammar import Grammar, LevelDictionary
from ..text_model import MAX_ALPHABET, SENTINEL, Text, symbol_width
from .packed import PackedIntArray, n_words, pack_fixed, unpack_fixed
from .simple8b import s8b_decode, s8b_encode

MAGIC = b"GCIS"
VERSION = 1
_U64 = struct.Struct("<Q")
_HEADER = struct.Struct("<4sBQH")
_WORD = np.dtype("<u8")


class _Reader:
    def __init__(self, data):
        self.buf = memoryview(bytes(data))
        self.pos = 0

    def take(self, nbytes: int, what: str) -> memoryview:
        end = self.pos + nbytes
        if nbytes < 0 or end > len(self.buf):
            raise TruncatedArchiveError(f"archive truncated while reading {what}")
        chunk = self.buf[self.pos:end]
        self.pos = end
        return chunk

    def u64(self, what: str) -> int:
        return _U64.unpack(self.take(8, what))[0]

    def words(self, count: int, what: str) -> np.ndarray:
        if count > len(self.buf):
            raise TruncatedArchiveError(f"archive truncated while reading {what}")
        return np.frombuffer(self.take(8 * count, what), dtype=_WORD).astype(np.uint64)

    def packed(self, count: int, width: int, what: str) -> np.ndarray:
        if count > 8 * len(self.buf):
            raise TruncatedArchiveError(f"archive truncated while reading {what}")
        words = self.words(n_words(count, width), what)
        return unpack_fixed(PackedIntArray(words, width, count)).astype(np.int64)


def _words_bytes(words: np.ndarray) -> bytes:
    return np.asarray(words, dtype=_WORD).tobytes()


def _s8b_stream(values) -> bytes:
    words = s8b_encode(values)
    return _U64.pack(len(words)) + _words_bytes(words)


def encode_level(d: LevelDictionary) -> bytes:
    width = symbol_width(d.rhs_alphabet_size)
    parts = [
        _U64.pack(d.sigma),
        _U64.pack(d.rhs_alphabet_size),
        _U64.pack(len(d.prefix_rule)),
        _s8b_stream(d.lcp),
        _s8b_stream(d.tail_len),
        _U64.pack(len(d.tails)),
        _words_bytes(pack_fixed(d.tails, width).words),
        _words_bytes(pack_fixed(d.prefix_rule, width).words),
    ]
    return b"".join(parts)


def _read_level(r: _Reader, level: int) -> LevelDictionary:
    sigma = r.u64("level sigma")
    rhs_alphabet_size = r.u64("level alphabet size")
    prefix_len = r.u64("prefix length")
    if sigma < 1:
        raise CorruptArchiveError(f"level {level} declares no rules")
    if not 2 <= rhs_alphabet_size <= MAX_ALPHABET:
        raise CorruptArchiveError(f"level {level} has unusable alphabet size {rhs_alphabet_size}")
    lcp = s8b_decode(r.words(r.u64("L word count"), "L words"), sigma).astype(np.int64)
    tail_len = s8b_decode(r.words(r.u64("S word count"), "S words"), sigma).astype(np.int64)
    n_tail = r.u64("R symbol count")
    if int(tail_len.sum()) != n_tail:
        raise CorruptArchiveError(
            f"level {level}: tail lengths sum to {int(tail_len.sum())} but R holds {n_tail} symbols"
        )
    width = symbol_width(rhs_alphabet_size)
    tails = r.packed(n_tail, width, "R symbols")
    prefix = r.packed(prefix_len, width, "prefix rule")
    for name, arr in (("R", tails), ("prefix rule", prefix)):
        if len(arr) and (arr.min() == SENTINEL or arr.max() >= rhs_alphabet_size):
            raise CorruptArchiveError(f"level {level}: {name} symbol outside alphabet")
    if lcp[0] != 0:
        raise CorruptArchiveError(f"level {level}: first rule has nonzero lcp")
    return LevelDictionary(level, sigma, lcp, tail_len, tails, prefix, rhs_alphabet_size)


def decode_level(block, level: int = 1) -> LevelDictionary:
    r = _Reader(block)
    d = _read_level(r, level)
    if r.pos != len(r.buf):
        raise CorruptArchiveError(f"{len(r.buf) - r.pos} trailing bytes after level block")
    return d


def encode_final_text(t: Text) -> bytes:
    body = t.symbols[:-1]
    packed = pack_fixed(body, symbol_width(t.alphabet_size))
    return _U64.pack(len(body)) + _U64.pack(t.alphabet_size) + _words_bytes(packed.words)


def serialize(g: Grammar) -> bytes:
    parts = [_HEADER.pack(MAGIC, VERSION, g.original_len, len(g.levels)), encode_final_text(g.final_text)]
    parts.extend(encode_level(d) for d in reversed(g.levels))
    return b"".join(parts)


def deserialize(data) -> Grammar:
    r = _Reader(data)
    magic, version, original_len, level_count = _HEADER.unpack(r.take(_HEADER.size, "header"))
    if magic != MAGIC:
        raise BadMagicError(f"bad magic {bytes(magic)!r}, expected {MAGIC!r}")
    if version != VERSION:
        raise UnsupportedVersionError(f"unsupported archive version {version}")
    count = r.u64("final text length")
    alphabet_size = r.u64("final text alphabet")
    if not 1 <= alphabet_size <= MAX_ALPHABET:
        raise CorruptArchiveError(f"final text alphabet size {alphabet_size} is unusable")
    body = r.packed(count, symbol_width(alphabet_size), "final text")
    if len(body) and (body.min() == SENTINEL or body.max() >= alphabet_size):
        raise CorruptArchiveError("final text symbol outside its alphabet")
    symbols = np.append(body, SENTINEL)
    final = Text(symbols, int(alphabet_size), level_count, _checked=True)
    levels = [None] * level_count
    for j in range(level_count, 0, -1):
        levels[j - 1] = _read_level(r, j)
    if r.pos != len(r.buf):
        raise CorruptArchiveError(f"{len(r.buf) - r.pos} trailing bytes after archive")
    for j in range(level_count):
        above = levels[j + 1].rhs_alphabet_size if j + 1 < level_count else final.alphabet_size
        if above != levels[j].sigma + 1:
            raise CorruptArchiveError(
                f"level {j + 1} has {levels[j].sigma} rules but the level above uses alphabet {above}"
            )
    return Grammar(levels, final, int(original_len))
