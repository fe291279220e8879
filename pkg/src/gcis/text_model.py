"""Integer-alphabet texts terminated by a unique sentinel.

Positions are 0-based throughout the package. Symbol ``0`` is the sentinel; at
level 0 a byte ``b`` is stored as ``b + 1`` so the alphabet is ``[0, 256]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import MalformedTextError

SENTINEL = 0
BYTE_ALPHABET_SIZE = 257
SYMBOL_DTYPE = np.int32
MAX_ALPHABET = 2**31 - 1


def symbol_width(alphabet_size: int) -> int:
    """Bits needed for the largest symbol of an alphabet of ``alphabet_size``.

    Equals ``floor(lg sigma) + 1`` where ``sigma = alphabet_size - 1`` is the
    largest symbol value; never less than one.
    """
    return max(1, int(alphabet_size - 1).bit_length())


@dataclass(frozen=True, eq=False)
class Text:
    symbols: np.ndarray
    alphabet_size: int
    level: int = 0
    _checked: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self):
        syms = np.ascontiguousarray(self.symbols, dtype=SYMBOL_DTYPE)
        syms.setflags(write=False)
        object.__setattr__(self, "symbols", syms)
        if not self._checked:
            validate(syms, self.alphabet_size)

    def __len__(self):
        return len(self.symbols)

    def __eq__(self, other):
        if not isinstance(other, Text):
            return NotImplemented
        return (
            self.alphabet_size == other.alphabet_size
            and self.level == other.level
            and np.array_equal(self.symbols, other.symbols)
        )

    def __repr__(self):
        body = self.symbols.tolist()
        if len(body) > 16:
            body = body[:16] + ["..."]
        return f"Text({body}, alphabet_size={self.alphabet_size}, level={self.level})"

    @classmethod
    def from_symbols(cls, symbols, alphabet_size: int | None = None, level: int = 0) -> "Text":
        """Build a text from values that already include the sentinel."""
        syms = np.asarray(symbols, dtype=SYMBOL_DTYPE)
        if alphabet_size is None:
            alphabet_size = int(syms.max()) + 1 if len(syms) else 1
        return cls(syms, alphabet_size, level)

    @property
    def body(self) -> np.ndarray:
        """Symbols without the trailing sentinel."""
        return self.symbols[:-1]


def validate(symbols: np.ndarray, alphabet_size: int) -> None:
    if not 1 <= alphabet_size <= MAX_ALPHABET:
        raise MalformedTextError(f"alphabet_size must be positive, got {alphabet_size}")
    if len(symbols) == 0:
        raise MalformedTextError("a text holds at least the sentinel")
    if symbols[-1] != SENTINEL:
        raise MalformedTextError("text does not end with the sentinel")
    body = symbols[:-1]
    if len(body):
        if body.min() <= SENTINEL:
            raise MalformedTextError("sentinel (or negative symbol) before the end of the text")
        if body.max() >= alphabet_size:
            raise MalformedTextError(
                f"symbol {int(body.max())} outside alphabet of size {alphabet_size}"
            )


def from_bytes(data) -> Text:
    raw = np.frombuffer(bytes(data), dtype=np.uint8)
    syms = np.empty(len(raw) + 1, dtype=SYMBOL_DTYPE)
    syms[:-1] = raw
    syms[:-1] += 1
    syms[-1] = SENTINEL
    return Text(syms, BYTE_ALPHABET_SIZE, 0, _checked=True)


def to_bytes(t: Text) -> bytes:
    if t.level != 0:
        raise MalformedTextError(f"only level-0 texts map to bytes (got level {t.level})")
    syms = t.symbols
    if len(syms) == 0 or syms[-1] != SENTINEL:
        raise MalformedTextError("text does not end with the sentinel")
    body = syms[:-1]
    if len(body) and (body.min() < 1 or body.max() > 256):
        raise MalformedTextError("symbol outside the byte range [1, 256]")
    return (body - 1).astype(np.uint8).tobytes()
