"""Suffix typing, LMS-substring factorization, induced sorting and naming.

This is the first step of SA-IS restricted to what grammar construction
needs: the LMS-substrings are sorted by induction and named, and the
front-coding information (lcp + remaining tail of each distinct rule body) is
collected during the naming scan.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numba
import numpy as np

from .text_model import SYMBOL_DTYPE, Text


@dataclass(frozen=True, eq=False)
class TypeMap:
    is_s: np.ndarray  # bool per position
    lms: np.ndarray  # sorted LMS positions

    def types(self) -> str:
        return "".join("S" if s else "L" for s in self.is_s)


class FactorOccurrence(NamedTuple):
    start: int
    end: int  # inclusive


@dataclass(frozen=True, eq=False)
class Factorization:
    """LMS-substrings of a text in text order, as parallel start/end arrays."""

    starts: np.ndarray
    ends: np.ndarray

    def __len__(self):
        return len(self.starts)

    def __getitem__(self, k) -> FactorOccurrence:
        return FactorOccurrence(int(self.starts[k]), int(self.ends[k]))

    def __iter__(self):
        for s, e in zip(self.starts.tolist(), self.ends.tolist()):
            yield FactorOccurrence(s, e)


@dataclass(frozen=True, eq=False)
class NamingResult:
    names: np.ndarray  # one name per factor, text order, values in [1, sigma]
    sigma: int
    lcp: np.ndarray  # per name: lcp with the previous name's rule body
    tail_len: np.ndarray  # per name: length of the stored tail
    tails: np.ndarray  # all tails concatenated in name order
    prefix_len: int

    @property
    def sorted_rules(self) -> list[tuple[int, tuple[int, ...]]]:
        out = []
        offsets = np.concatenate(([0], np.cumsum(self.tail_len)))
        for i in range(self.sigma):
            tail = self.tails[offsets[i]:offsets[i + 1]]
            out.append((int(self.lcp[i]), tuple(tail.tolist())))
        return out


@numba.njit(cache=True, nogil=True)
def _classify_kernel(t, is_s):
    n = len(t)
    is_s[n - 1] = True
    for i in range(n - 2, -1, -1):
        a = t[i]
        b = t[i + 1]
        is_s[i] = a < b or (a == b and is_s[i + 1])


def classify_types(t: Text) -> TypeMap:
    """Type every suffix as S or L in one right-to-left scan and collect LMS positions."""
    syms = t.symbols
    is_s = np.empty(len(syms), dtype=np.bool_)
    _classify_kernel(syms, is_s)
    lms = np.flatnonzero(is_s[1:] & ~is_s[:-1]) + 1
    is_s.setflags(write=False)
    return TypeMap(is_s, lms.astype(SYMBOL_DTYPE))


def factorize(t: Text, m: TypeMap) -> Factorization:
    """Split ``t`` into LMS-substrings; consecutive factors share one position.

    The final factor is always the lone sentinel ``[n-1, n-1]``. Positions
    before the first LMS position belong to no factor (they form the prefix
    rule).
    """
    n = len(t)
    starts = m.lms
    if len(starts) == 0 or starts[-1] != n - 1:
        starts = np.append(starts, n - 1).astype(SYMBOL_DTYPE)
    ends = np.empty_like(starts)
    ends[:-1] = starts[1:]
    ends[-1] = n - 1
    return Factorization(starts, ends)


@numba.njit(cache=True, nogil=True)
def _induced_sort_kernel(ts, starts, alphabet_size):
    """Sorted factor start positions; ``ts`` holds ``symbol << 1 | is_s``."""
    n = len(ts)
    counts = np.zeros(alphabet_size, dtype=np.int64)
    for i in range(n):
        counts[ts[i] >> 1] += 1
    heads = np.empty(alphabet_size, dtype=np.int64)
    tails = np.empty(alphabet_size, dtype=np.int64)
    acc = 0
    for c in range(alphabet_size):
        heads[c] = acc
        acc += counts[c]
        tails[c] = acc - 1

    sa = np.full(n, -1, dtype=np.int32)
    # LMS positions go to bucket tails, scanned right to left
    bt = tails.copy()
    for k in range(len(starts) - 1, -1, -1):
        p = starts[k]
        c = ts[p] >> 1
        sa[bt[c]] = p
        bt[c] -= 1

    bh = heads.copy()
    for i in range(n):
        p = sa[i]
        if p > 0:
            x = ts[p - 1]
            if not x & 1:
                c = x >> 1
                sa[bh[c]] = p - 1
                bh[c] += 1

    bt = tails.copy()
    for i in range(n - 1, -1, -1):
        p = sa[i]
        if p > 0:
            x = ts[p - 1]
            if x & 1:
                c = x >> 1
                sa[bt[c]] = p - 1
                bt[c] -= 1

    out = np.empty(len(starts), dtype=np.int32)
    m = 0
    for i in range(n):
        p = sa[i]
        # factor starts: LMS positions, plus the sentinel of a sentinel-only text
        if p == n - 1 or (p > 0 and ts[p] & 1 and not ts[p - 1] & 1):
            out[m] = p
            m += 1
    return out[:m]


def _typed_symbols(t: Text, m: TypeMap) -> np.ndarray:
    # the narrowest dtype keeps the randomly probed array small
    if t.alphabet_size < 2**14:
        dtype = np.int16
    elif t.alphabet_size < 2**30:
        dtype = np.int32
    else:
        dtype = np.int64
    ts = t.symbols.astype(dtype) << 1
    ts |= m.is_s
    return ts


def _sorted_starts(t: Text, m: TypeMap, f: Factorization, ts=None) -> np.ndarray:
    if ts is None:
        ts = _typed_symbols(t, m)
    pos = _induced_sort_kernel(ts, f.starts, t.alphabet_size)
    if len(pos) != len(f):
        raise AssertionError("induced sort lost factors")
    return pos


def sort_lms(t: Text, m: TypeMap, f: Factorization) -> np.ndarray:
    """Order factor indices by LMS-substring order via induced sorting.

    Ties between equal factors are left in whatever order induction produces.
    """
    return np.searchsorted(f.starts, _sorted_starts(t, m, f)).astype(np.int64)


@numba.njit(cache=True, nogil=True)
def _name_kernel(ts, starts, sorted_starts, sym_template):
    n = len(ts)
    nf = len(sorted_starts)
    # factor starts are at least two apart, so p >> 1 is a collision-free slot
    slot = np.empty(n // 2 + 1, dtype=sym_template.dtype)
    lcp = np.empty(nf, dtype=np.int64)
    tail_len = np.empty(nf, dtype=np.int64)
    tails = np.empty(n, dtype=sym_template.dtype)
    ntail = 0
    name = 0
    ps = -1
    pe = -1
    for r in range(nf):
        cs = sorted_starts[r]
        ce = cs
        if cs < n - 1:
            ce = cs + 1
            while ce < n - 1 and not (ts[ce] & 1 and not ts[ce - 1] & 1):
                ce += 1
        same = False
        if ps >= 0 and ce - cs == pe - ps:
            same = True
            for d in range(ce - cs + 1):
                if ts[cs + d] != ts[ps + d]:
                    same = False
                    break
        if not same:
            # rule bodies drop the closing LMS symbol; lcp ignores types
            l = 0
            if ps >= 0:
                lim = min(pe - ps, ce - cs)
                while l < lim and ts[ps + l] >> 1 == ts[cs + l] >> 1:
                    l += 1
            lcp[name] = l
            tl = (ce - cs) - l
            tail_len[name] = tl
            for d in range(tl):
                tails[ntail + d] = ts[cs + l + d] >> 1
            ntail += tl
            name += 1
        slot[cs >> 1] = name
        ps = cs
        pe = ce
    names = np.empty(nf, dtype=sym_template.dtype)
    for k in range(nf):
        names[k] = slot[starts[k] >> 1]
    return names, name, lcp[:name].copy(), tail_len[:name].copy(), tails[:ntail].copy()


def name_factors(t: Text, f: Factorization, order: np.ndarray, m: TypeMap | None = None) -> NamingResult:
    """Name sorted factors by rank and front-code the distinct rule bodies.

    ``order`` lists factor indices in sorted order (as from ``sort_lms``).
    """
    if m is None:
        m = classify_types(t)
    return _name_sorted(t, m, f, f.starts[np.asarray(order)])


def _name_sorted(t: Text, m: TypeMap, f: Factorization, sorted_starts, ts=None) -> NamingResult:
    if ts is None:
        ts = _typed_symbols(t, m)
    names, sigma, lcp, tail_len, tails = _name_kernel(
        ts, f.starts, np.ascontiguousarray(sorted_starts, dtype=np.int32), t.symbols[:0])
    return NamingResult(names, int(sigma), lcp, tail_len, tails, int(f.starts[0]))


def name_text(t: Text) -> tuple[TypeMap, Factorization, NamingResult]:
    """Classify, factorize, sort and name in one go (the production path)."""
    m = classify_types(t)
    f = factorize(t, m)
    ts = _typed_symbols(t, m)
    return m, f, _name_sorted(t, m, f, _sorted_starts(t, m, f, ts), ts)
