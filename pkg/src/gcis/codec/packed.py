"""Fixed-width bit packing of non-negative integers into 64-bit words."""

from __future__ import annotations

from dataclasses import dataclass

import numba
import numpy as np

from ..errors import RangeError


@dataclass(frozen=True, eq=False)
class PackedIntArray:
    words: np.ndarray  # uint64, little-endian bit order within and across words
    width: int
    count: int

    @property
    def nbits(self) -> int:
        return self.width * self.count

    def __len__(self):
        return self.count

    def __eq__(self, other):
        if not isinstance(other, PackedIntArray):
            return NotImplemented
        return (self.width, self.count) == (other.width, other.count) and np.array_equal(
            self.words, other.words
        )


def n_words(count: int, width: int) -> int:
    return (count * width + 63) // 64


@numba.njit(cache=True, nogil=True)
def _pack_kernel(values, width, words):
    w = np.uint64(width)
    for k in range(len(values)):
        v = values[k]
        bit = k * width
        wi = bit >> 6
        off = bit & 63
        words[wi] |= v << np.uint64(off)
        if off + width > 64:
            words[wi + 1] |= v >> np.uint64(64 - off)
    return words


@numba.njit(cache=True, nogil=True)
def _unpack_kernel(words, width, count, out):
    if width == 64:
        mask = np.uint64(0xFFFFFFFFFFFFFFFF)
    else:
        mask = (np.uint64(1) << np.uint64(width)) - np.uint64(1)
    for k in range(count):
        bit = k * width
        wi = bit >> 6
        off = bit & 63
        v = words[wi] >> np.uint64(off)
        if off + width > 64:
            v |= words[wi + 1] << np.uint64(64 - off)
        out[k] = v & mask
    return out


def pack_fixed(values, width: int) -> PackedIntArray:
    if not 1 <= width <= 64:
        raise RangeError(f"width must be in [1, 64], got {width}")
    # plain lists may mix values above 2^63 that numpy would turn into floats
    arr = values if isinstance(values, np.ndarray) else np.asarray(values, dtype=object)
    if arr.size == 0:
        return PackedIntArray(np.zeros(0, dtype=np.uint64), width, 0)
    if arr.dtype.kind not in "iu":
        py = [int(v) for v in arr.tolist()]
        if min(py) < 0 or max(py) >= (1 << width):
            raise RangeError(f"values must lie in [0, 2^{width})")
        arr = np.array(py, dtype=np.uint64)
    else:
        if arr.dtype.kind == "i" and arr.min() < 0:
            raise RangeError(f"negative value {int(arr.min())}")
        if width < 64 and int(arr.max()) >= (1 << width):
            raise RangeError(f"value {int(arr.max())} does not fit in {width} bits")
        arr = np.ascontiguousarray(arr, dtype=np.uint64)
    words = np.zeros(n_words(len(arr), width), dtype=np.uint64)
    _pack_kernel(arr, width, words)
    return PackedIntArray(words, width, len(arr))


def unpack_fixed(arr: PackedIntArray) -> np.ndarray:
    out = np.empty(arr.count, dtype=np.uint64)
    if arr.count:
        if len(arr.words) < n_words(arr.count, arr.width):
            raise RangeError("packed array is shorter than width * count bits")
        _unpack_kernel(np.ascontiguousarray(arr.words, dtype=np.uint64), arr.width, arr.count, out)
    return out
