import struct
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gcis.bench import gen_fibonacci
from gcis.codec import (
    decode_level,
    deserialize,
    encode_level,
    s8b_encode,
    serialize,
)
from gcis.codec.simple8b import selector
from gcis.errors import (
    BadMagicError,
    CorruptArchiveError,
    TruncatedArchiveError,
    UnsupportedVersionError,
)
from gcis.grammar import LevelDictionary
from gcis.grammar_builder import compress_text, reduce_once
from gcis.text_model import from_bytes

GOLDEN = Path(__file__).parent / "data" / "banana.gcis"
A, B, N = 98, 99, 111


def u64s(block, count, offset=0):
    return list(struct.unpack_from(f"<{count}Q", block, offset))


def test_banana_level_block():
    d, _ = reduce_once(from_bytes(b"banana"))
    block = encode_level(d)
    sigma, alphabet, prefix_len, l_words = u64s(block, 4)
    assert (sigma, alphabet, prefix_len, l_words) == (3, 257, 1, 1)
    l_word, s_count, s_word, r_count, r_word, prefix_word = u64s(block, 6, 32)
    # L = [0, 0, 2] and S = [0, 3, 0], both one selector-3 word
    assert l_word == 3 | 2 << 8
    assert s_count == 1 and s_word == 3 | 3 << 6
    # R = "ana" at 9 bits per symbol, prefix "b"
    assert r_count == 3 and r_word == A | N << 9 | A << 18
    assert prefix_word == B
    assert len(block) == 80
    assert decode_level(block) == d


def test_aaaa_level():
    d, _ = reduce_once(from_bytes(b"aaaa"))
    back = decode_level(encode_level(d))
    assert back.lcp.tolist() == [0] and back.tail_len.tolist() == [0]
    assert back.tails.tolist() == [] and back.prefix_rule.tolist() == [A] * 4


def test_many_zero_lcps_use_run_words():
    d = LevelDictionary.from_rules(1, [(0, (1 + i % 5,)) for i in range(300)], [], 6)
    block = encode_level(d)
    n_words = u64s(block, 1, 24)[0]
    words = u64s(block, n_words, 32)
    assert selector(words[0]) == 0
    assert n_words == 2
    assert decode_level(block) == d


def test_tail_lengths_exceed_r():
    d, _ = reduce_once(from_bytes(b"banana"))
    block = bytearray(encode_level(d))
    # S stream is at offset 48; bump the 3 to 4 so S sums past R
    word = struct.unpack_from("<Q", block, 48)[0]
    struct.pack_into("<Q", block, 48, word + (1 << 6))
    with pytest.raises(CorruptArchiveError):
        decode_level(bytes(block))


def test_banana_archive_layout():
    blob = serialize(compress_text(b"banana"))
    magic, version, original_len, levels = struct.unpack_from("<4sBQH", blob)
    assert (magic, version, original_len, levels) == (b"GCIS", 1, 6, 1)
    count, alphabet, packed = struct.unpack_from("<3Q", blob, 15)
    assert (count, alphabet) == (3, 4)
    assert packed == 3 | 2 << 2 | 1 << 4  # names 3, 2, 1 at width 2
    assert len(blob) == 15 + 24 + 80


def test_golden_banana():
    blob = serialize(compress_text(b"banana"))
    assert blob == GOLDEN.read_bytes()
    assert serialize(compress_text(b"banana")) == blob


def test_bad_magic():
    blob = bytearray(GOLDEN.read_bytes())
    blob[:4] = b"GCIZ"
    with pytest.raises(BadMagicError):
        deserialize(bytes(blob))


def test_bad_version():
    blob = bytearray(GOLDEN.read_bytes())
    blob[4] = 2
    with pytest.raises(UnsupportedVersionError):
        deserialize(bytes(blob))


def test_every_truncation_rejected():
    blob = serialize(compress_text(gen_fibonacci(12)))
    for cut in range(len(blob)):
        with pytest.raises(TruncatedArchiveError):
            deserialize(blob[:cut])


def test_trailing_garbage():
    with pytest.raises(CorruptArchiveError):
        deserialize(GOLDEN.read_bytes() + b"\0")


def test_errors_are_distinct():
    assert not issubclass(BadMagicError, TruncatedArchiveError)
    assert not issubclass(UnsupportedVersionError, BadMagicError)


@settings(max_examples=100, deadline=None)
@given(st.binary(max_size=1500), st.booleans())
def test_serialize_roundtrip(data, greedy):
    g = compress_text(data, greedy_stop=greedy)
    blob = serialize(g)
    assert deserialize(blob) == g
    for d in g.levels:
        assert decode_level(encode_level(d), d.level) == d
