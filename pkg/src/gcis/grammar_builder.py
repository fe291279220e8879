"""Recursive grammar construction over LMS-substring factorizations."""

from __future__ import annotations

import logging

import numpy as np

from .codec.archive import encode_level
from .errors import InvariantError
from .grammar import Grammar, LevelDictionary, Rule
from .suffix_classify import name_text
from .text_model import SENTINEL, SYMBOL_DTYPE, Text, from_bytes, symbol_width

__all__ = [
    "Grammar", "LevelDictionary", "Rule", "build_grammar", "compress_text",
    "level_lengths", "naming_offset", "reduce_once", "text_bits",
]

log = logging.getLogger(__name__)


def reduce_once(t: Text) -> tuple[LevelDictionary, Text]:
    """Factorize ``t`` once: return its level dictionary and the reduced text.

    The reduced text is the sequence of factor names (in ``[1, sigma]``)
    followed by a fresh sentinel.
    """
    _, _, nr = name_text(t)
    prefix = t.symbols[:nr.prefix_len]
    d = LevelDictionary(t.level + 1, nr.sigma, nr.lcp, nr.tail_len, nr.tails, prefix, t.alphabet_size)
    reduced = np.empty(len(nr.names) + 1, dtype=SYMBOL_DTYPE)
    reduced[:-1] = nr.names
    reduced[-1] = SENTINEL
    return d, Text(reduced, nr.sigma + 1, t.level + 1, _checked=True)


def text_bits(t: Text) -> int:
    """Bits needed to store ``t`` (sentinel excluded) at its alphabet's width."""
    return (len(t) - 1) * symbol_width(t.alphabet_size)


def _check_level(d: LevelDictionary, n: int, reduced: Text) -> None:
    # stream bounds: no two LMS-substrings overlap
    if int(d.lcp.sum()) > n or int(d.tail_len.sum()) > n:
        raise InvariantError(f"level {d.level}: lcp or tail sum exceeds input length {n}")
    if len(reduced) > (n + 1) // 2 + 1:
        raise InvariantError(f"level {d.level}: reduced length {len(reduced)} from {n}")


def build_grammar(t: Text, max_levels: int | None = None, greedy_stop: bool = True) -> Grammar:
    """Recursively reduce ``t`` and collect one dictionary per kept level.

    Recursion ends when a level's factors are pairwise distinct (that level
    is kept and its names become the final text), when ``max_levels`` is
    reached, or, with ``greedy_stop``, when the encoded dictionary plus the
    reduced text would take at least as many bits as the current text (the
    new level is then discarded).
    """
    levels = []
    current = t
    while max_levels is None or len(levels) < max_levels:
        d, reduced = reduce_once(current)
        _check_level(d, len(current), reduced)
        distinct = d.sigma == len(reduced) - 1
        if greedy_stop and not distinct:
            new_bits = 8 * len(encode_level(d)) + text_bits(reduced)
            if new_bits >= text_bits(current):
                log.debug("level %d discarded: %d bits vs %d", d.level, new_bits, text_bits(current))
                break
        levels.append(d)
        current = reduced
        log.debug("level %d: n=%d sigma=%d", d.level, len(reduced) - 1, d.sigma)
        if distinct:
            break
    return Grammar(levels, current, len(t) - 1)


def compress_text(data, **kwargs) -> Grammar:
    return build_grammar(from_bytes(data), **kwargs)


def naming_offset(sigmas, j: int, v: int) -> int:
    """Global nonterminal id of level-``j`` name ``v``: ``v`` plus all lower sigmas.

    ``sigmas`` is the per-level rule count (level 1 first) or a grammar's
    levels. Levels are 1-based.
    """
    sig = [s.sigma if isinstance(s, LevelDictionary) else int(s) for s in sigmas]
    if j < 1:
        raise ValueError(f"level must be >= 1, got {j}")
    if j <= len(sig) and not 1 <= v <= sig[j - 1]:
        raise ValueError(f"name {v} outside [1, {sig[j - 1]}] at level {j}")
    if j > len(sig) + 1 or v < 1:
        raise ValueError(f"level {j} / name {v} out of range")
    return v + sum(sig[:j - 1])


def level_lengths(g: Grammar) -> list[int]:
    """Text length (sentinel included) at the input of each level, level 0 first.

    Only symbol multiplicities are pushed down through the levels, so the
    texts themselves are never materialized. The last entry is
    ``len(final_text)``.
    """
    from .decoder import expand_rules

    out = [len(g.final_text)]
    if not g.levels:
        return out
    occ = np.bincount(g.final_text.symbols[:-1], minlength=g.levels[-1].sigma + 1)
    for d in reversed(g.levels):
        ed = expand_rules(d)
        lens = ed.lengths()
        uses = occ[1:d.sigma + 1]
        out.append(len(d.prefix_rule) + int((uses * lens).sum()) + 1)
        below = np.zeros(d.rhs_alphabet_size, dtype=np.int64)
        np.add.at(below, d.prefix_rule, 1)
        np.add.at(below, ed.bodies, np.repeat(uses, lens))
        occ = below
    return out[::-1]
