"""Level-wise decompression.

Each level's front-coded rules are expanded into one contiguous body array
with a terminator bitmap over it; the level's text is then rewritten by
copying bodies, starting from the last level.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numba
import numpy as np

from .codec.archive import deserialize
from .errors import CorruptArchiveError, MalformedTextError
from .grammar import Grammar, LevelDictionary
from .text_model import SENTINEL, SYMBOL_DTYPE, Text, symbol_width, to_bytes

SELECT_SAMPLE = 64


@numba.njit(cache=True, nogil=True)
def _select_scan(bits, samples, rate, i):
    # position of the i-th one (1-based i), starting from the nearest sample
    k = (i - 1) // rate
    p = samples[k]
    left = (i - 1) - k * rate
    while left > 0:
        p += 1
        if bits[p]:
            left -= 1
    return p


class BoundaryIndex:
    """Bitmap with a 1 closing every rule body, plus sampled select support.

    For ``sigma`` bodies of total length ``m`` the bitmap has ``m + sigma``
    bits; zero-length bodies show up as adjacent ones.
    """

    def __init__(self, bits, rate: int = SELECT_SAMPLE):
        self.bits = np.ascontiguousarray(bits, dtype=np.bool_)
        self.rate = rate
        ones = np.flatnonzero(self.bits)
        self.n_ones = len(ones)
        self.samples = ones[::rate].astype(np.int64)

    @classmethod
    def from_lengths(cls, lengths, rate: int = SELECT_SAMPLE) -> "BoundaryIndex":
        lengths = np.asarray(lengths, dtype=np.int64)
        bits = np.zeros(int(lengths.sum()) + len(lengths), dtype=np.bool_)
        bits[np.cumsum(lengths + 1) - 1] = True
        return cls(bits, rate)

    def __len__(self):
        return len(self.bits)

    def rank1(self, pos: int) -> int:
        """Number of ones in ``bits[:pos]``."""
        return int(np.count_nonzero(self.bits[:pos]))

    def select1(self, i: int) -> int:
        """0-based position of the ``i``-th one; ``select1(0)`` is -1."""
        if i == 0:
            return -1
        if not 1 <= i <= self.n_ones:
            raise IndexError(f"select1({i}) with {self.n_ones} ones")
        return int(_select_scan(self.bits, self.samples, self.rate, i))

    def start(self, i: int) -> int:
        """Offset of body ``i`` (1-based) in the concatenated bodies."""
        return self.select1(i - 1) + 1 - (i - 1)

    def length(self, i: int) -> int:
        return self.select1(i) - self.select1(i - 1) - 1

    def all_ones(self) -> np.ndarray:
        return np.flatnonzero(self.bits)


@dataclass(frozen=True, eq=False)
class ExpandedDictionary:
    bodies: np.ndarray  # all rule bodies concatenated, name order
    boundaries: BoundaryIndex
    sigma: int
    width: int = 0

    def body(self, i: int) -> np.ndarray:
        s = self.boundaries.start(i)
        return self.bodies[s:s + self.boundaries.length(i)]

    def starts(self) -> np.ndarray:
        ones = self.boundaries.all_ones()
        prev = np.concatenate(([-1], ones[:-1]))
        return prev + 1 - np.arange(self.sigma)

    def lengths(self) -> np.ndarray:
        ones = self.boundaries.all_ones()
        return np.diff(np.concatenate(([-1], ones))) - 1


@numba.njit(cache=True, nogil=True)
def _front_decode_kernel(lcp, tail_len, tails, bodies, lengths):
    pos = 0  # next write position
    prev = 0  # start of previous body
    tpos = 0
    for k in range(len(lcp)):
        l = lcp[k]
        if k == 0:
            if l != 0:
                return k
        elif l > lengths[k - 1]:
            return k
        for d in range(l):
            bodies[pos + d] = bodies[prev + d]
        tl = tail_len[k]
        for d in range(tl):
            bodies[pos + l + d] = tails[tpos + d]
        tpos += tl
        lengths[k] = l + tl
        prev = pos
        pos += l + tl
    return -1


def expand_rules(d: LevelDictionary) -> ExpandedDictionary:
    """Undo front coding: body k+1 is body k's first lcp symbols then tail k+1."""
    lengths = np.empty(d.sigma, dtype=np.int64)
    total = int(d.lcp.sum() + d.tail_len.sum())
    bodies = np.empty(total, dtype=SYMBOL_DTYPE)
    bad = _front_decode_kernel(d.lcp, d.tail_len, d.tails, bodies, lengths)
    if bad >= 0:
        raise CorruptArchiveError(
            f"level {d.level}: rule {bad + 1} copies more symbols than its predecessor has"
        )
    return ExpandedDictionary(bodies, BoundaryIndex.from_lengths(lengths), d.sigma,
                              symbol_width(d.rhs_alphabet_size))


@numba.njit(cache=True, nogil=True)
def _rewrite_kernel(prefix, reduced, bodies, starts, lengths, sigma, limit):
    total = len(prefix) + 1
    for i in range(len(reduced) - 1):
        v = reduced[i]
        if v < 1 or v > sigma:
            return np.empty(0, dtype=bodies.dtype), i
        total += lengths[v - 1]
        if total > limit:
            return np.empty(0, dtype=bodies.dtype), -2
    out = np.empty(total, dtype=bodies.dtype)
    for i in range(len(prefix)):
        out[i] = prefix[i]
    pos = len(prefix)
    for i in range(len(reduced) - 1):
        v = reduced[i] - 1
        s = starts[v]
        for d in range(lengths[v]):
            out[pos + d] = bodies[s + d]
        pos += lengths[v]
    out[pos] = 0
    return out, -1


def expand_level(ed: ExpandedDictionary, prefix_rule, reduced: Text,
                 alphabet_size: int | None = None, limit: int | None = None) -> Text:
    """Rewrite ``reduced`` one level down: prefix rule, then each name's body.

    ``limit`` caps the output length (sentinel included); exceeding it means
    the archive is corrupt.
    """
    prefix = np.ascontiguousarray(prefix_rule, dtype=SYMBOL_DTYPE)
    cap = np.iinfo(np.int64).max if limit is None else int(limit)
    out, bad = _rewrite_kernel(prefix, reduced.symbols, ed.bodies, ed.starts(), ed.lengths(),
                               ed.sigma, cap)
    if bad == -2:
        raise CorruptArchiveError(f"level expands beyond {cap} symbols")
    if bad >= 0:
        raise CorruptArchiveError(
            f"symbol {int(reduced.symbols[bad])} at position {bad} outside [1, {ed.sigma}]"
        )
    if alphabet_size is None:
        alphabet_size = int(max(out.max(initial=0), prefix.max(initial=0))) + 1
    return Text(out, alphabet_size, max(reduced.level - 1, 0), _checked=True)


@dataclass
class DecodeStats:
    """Per-level work counters, last level first."""

    body_symbols: list = field(default_factory=list)
    output_symbols: list = field(default_factory=list)


def expand_grammar(g: Grammar, stats: DecodeStats | None = None) -> Text:
    current = g.final_text
    for d in reversed(g.levels):
        ed = expand_rules(d)
        current = expand_level(ed, d.prefix_rule, current, d.rhs_alphabet_size,
                               limit=g.original_len + 1)
        n = len(current)
        if int(d.lcp.sum()) > n or int(d.tail_len.sum()) > n:
            raise CorruptArchiveError(f"level {d.level}: stream sums exceed level length {n}")
        if stats is not None:
            stats.body_symbols.append(len(ed.bodies))
            stats.output_symbols.append(n)
    if len(current) != g.original_len + 1:
        raise CorruptArchiveError(
            f"decoded {len(current) - 1} symbols, header says {g.original_len}"
        )
    if current.symbols[:-1].size and current.symbols[:-1].min() == SENTINEL:
        raise CorruptArchiveError("sentinel inside decoded text")
    return current


def decompress(archive, stats: DecodeStats | None = None) -> bytes:
    g = deserialize(archive)
    try:
        return to_bytes(expand_grammar(g, stats))
    except MalformedTextError as exc:
        raise CorruptArchiveError(str(exc)) from exc
