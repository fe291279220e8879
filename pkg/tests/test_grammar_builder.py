import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gcis import oracle
from gcis.bench import gen_fibonacci, gen_random
from gcis.codec import encode_level
from gcis.grammar_builder import (
    build_grammar,
    compress_text,
    level_lengths,
    naming_offset,
    reduce_once,
    text_bits,
)
from gcis.text_model import Text, from_bytes

A, B, N = 98, 99, 111  # 'a', 'b', 'n' shifted by one


def test_reduce_banana():
    d, reduced = reduce_once(from_bytes(b"banana"))
    assert d.prefix_rule.tolist() == [B]
    assert d.rules == [(0, ()), (0, (A, N, A)), (2, ())]
    assert oracle.front_decode(d.rules) == [[], [A, N, A], [A, N]]
    assert d.sigma == 3 and d.level == 1 and d.rhs_alphabet_size == 257
    assert reduced.symbols.tolist() == [3, 2, 1, 0]
    assert reduced.alphabet_size == 4 and reduced.level == 1


def test_reduce_aaaa():
    d, reduced = reduce_once(from_bytes(b"aaaa"))
    assert d.prefix_rule.tolist() == [A] * 4
    assert d.rules == [(0, ())]
    assert reduced.symbols.tolist() == [1, 0]


def test_reduce_empty():
    d, reduced = reduce_once(from_bytes(b""))
    assert d.prefix_rule.tolist() == []
    assert d.rules == [(0, ())]
    assert reduced.symbols.tolist() == [1, 0]


def test_build_banana():
    g = compress_text(b"banana")
    assert len(g.levels) == 1
    assert g.final_text.symbols.tolist() == [3, 2, 1, 0]
    assert g.original_len == 6
    assert oracle.naive_expand(g) == b"banana"


def test_build_fibonacci_15():
    data = gen_fibonacci(15)
    assert len(data) == 987
    g = compress_text(data)
    lengths = level_lengths(g)
    assert len(g.levels) == 2
    assert lengths == [988, 378, 145]
    for a, b in zip(lengths, lengths[1:]):
        assert b - 1 <= (a - 1) / 2 + 1
    assert oracle.naive_expand(g) == data


def test_full_recursion_fibonacci_15():
    g = compress_text(gen_fibonacci(15), greedy_stop=False)
    assert level_lengths(g) == [988, 378, 145, 56, 22, 9, 4]
    # last level has pairwise distinct factors
    assert g.levels[-1].sigma == len(g.final_text) - 1


def test_random_megabyte_stops_immediately():
    data = gen_random(1 << 20, 256, 0)
    g = compress_text(data)
    assert g.levels == ()
    # the discarded level really was not worth it
    t = from_bytes(data)
    d, reduced = reduce_once(t)
    assert 8 * len(encode_level(d)) + text_bits(reduced) >= text_bits(t)


def test_max_levels():
    data = gen_fibonacci(20)
    assert len(compress_text(data, max_levels=2).levels) == 2
    assert len(compress_text(data, max_levels=0).levels) == 0


@settings(max_examples=150, deadline=None)
@given(st.binary(max_size=2000), st.booleans())
def test_grammar_invariants(data, greedy):
    g = compress_text(data, greedy_stop=greedy)
    assert oracle.naive_expand(g) == data
    lengths = level_lengths(g)
    assert lengths[0] == len(data) + 1
    for j, d in enumerate(g.levels):
        n = lengths[j]
        assert lengths[j + 1] <= -(-n // 2) + 1
        assert int(d.lcp.sum()) <= n and int(d.tail_len.sum()) <= n
        above = g.levels[j + 1].rhs_alphabet_size if j + 1 < len(g.levels) else g.final_text.alphabet_size
        assert above == d.sigma + 1
        # bodies only use the alphabet of the level below: no cycles
        assert d.tails.size == 0 or d.tails.max() < d.rhs_alphabet_size


@pytest.mark.parametrize("sigmas, j, v, expected", [
    ([], 1, 2, 2),
    ([3], 2, 1, 4),
    ([3, 7], 3, 5, 15),
])
def test_naming_offset(sigmas, j, v, expected):
    assert naming_offset(sigmas, j, v) == expected


@pytest.mark.parametrize("sigmas, j, v", [([3], 1, 4), ([3], 1, 0), ([3], 5, 1), ([], 0, 1)])
def test_naming_offset_range(sigmas, j, v):
    with pytest.raises(ValueError):
        naming_offset(sigmas, j, v)


def test_naming_offset_accepts_levels():
    g = compress_text(gen_fibonacci(15))
    s1 = g.levels[0].sigma
    assert naming_offset(g.levels, 2, 1) == s1 + 1
