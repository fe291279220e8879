"""Simple8b: pack small integers into 64-bit words behind a 4-bit selector.

Word layout: selector in bits 0-3, item ``k`` in bits ``4 + k*width`` upward.
Selectors 0 and 1 stand for runs of 240 and 120 zeros and carry no payload.
"""

from __future__ import annotations

import numba
import numpy as np

from ..errors import TruncatedArchiveError, UnencodableValueError

ITEM_WIDTH = np.array([0, 0, 1, 2, 3, 4, 5, 6, 7, 8, 10, 12, 15, 20, 30, 60], dtype=np.int64)
GROUP_SIZE = np.array([240, 120, 60, 30, 20, 15, 12, 10, 8, 7, 6, 5, 4, 3, 2, 1], dtype=np.int64)
MAX_VALUE = (1 << 60) - 1


@numba.njit(cache=True, nogil=True)
def _encode_kernel(values, widths, sizes):
    n = len(values)
    out = np.empty(n, dtype=np.uint64)
    nw = 0
    i = 0
    while i < n:
        z = 0
        while i + z < n and z < 240 and values[i + z] == 0:
            z += 1
        if z == 240:
            out[nw] = np.uint64(0)
            nw += 1
            i += 240
            continue
        if z >= 120:
            out[nw] = np.uint64(1)
            nw += 1
            i += 120
            continue
        for sel in range(2, 16):
            w = widths[sel]
            m = min(sizes[sel], n - i)
            limit = np.uint64(1) << np.uint64(w)
            fits = True
            for k in range(m):
                if values[i + k] >= limit:
                    fits = False
                    break
            if fits:
                word = np.uint64(sel)
                for k in range(m):
                    word |= values[i + k] << np.uint64(4 + k * w)
                out[nw] = word
                nw += 1
                i += m
                break
    return out[:nw].copy()


@numba.njit(cache=True, nogil=True)
def _decode_kernel(words, count, widths, sizes):
    out = np.zeros(count, dtype=np.uint64)
    i = 0
    wi = 0
    while i < count:
        if wi >= len(words):
            return out, False
        word = words[wi]
        wi += 1
        sel = np.int64(word & np.uint64(15))
        m = min(sizes[sel], count - i)
        w = widths[sel]
        if w > 0:
            mask = (np.uint64(1) << np.uint64(w)) - np.uint64(1)
            for k in range(m):
                out[i + k] = (word >> np.uint64(4 + k * w)) & mask
        i += m
    return out, True


def _as_u64(values) -> np.ndarray:
    arr = values if isinstance(values, np.ndarray) else np.asarray(values, dtype=object)
    if arr.size == 0:
        return np.zeros(0, dtype=np.uint64)
    if arr.dtype.kind not in "iu":
        # huge Python ints end up as object arrays
        py = [int(v) for v in arr.ravel().tolist()]
        bad = next((v for v in py if v < 0 or v > MAX_VALUE), None)
        if bad is not None:
            raise UnencodableValueError(f"value {bad} outside [0, 2^60)")
        return np.array(py, dtype=np.uint64)
    if arr.dtype.kind == "i" and arr.min() < 0:
        raise UnencodableValueError(f"negative value {int(arr.min())}")
    arr = arr.astype(np.uint64, copy=False)
    if arr.max() > MAX_VALUE:
        raise UnencodableValueError(f"value {int(arr.max())} does not fit in 60 bits")
    return np.ascontiguousarray(arr)


def s8b_encode(values) -> np.ndarray:
    """Greedy left-to-right Simple8b packing into a ``uint64`` word array.

    A zero-run selector is used only when 240 (or 120) zeros are pending;
    otherwise the densest selector whose width holds the next group wins. The
    last group may be partial; its unused slots are zero.
    """
    return _encode_kernel(_as_u64(values), ITEM_WIDTH, GROUP_SIZE)


def s8b_decode(words, count: int) -> np.ndarray:
    """Decode exactly ``count`` values, dropping padding of the last word."""
    words = np.ascontiguousarray(words, dtype=np.uint64)
    out, ok = _decode_kernel(words, int(count), ITEM_WIDTH, GROUP_SIZE)
    if not ok:
        raise TruncatedArchiveError(f"word stream exhausted before {count} values were decoded")
    return out


def selector(word) -> int:
    return int(word) & 15
