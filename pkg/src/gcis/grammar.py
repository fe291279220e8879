"""Grammar value types: front-coded level dictionaries and the full grammar."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .text_model import SYMBOL_DTYPE, Text


class Rule(NamedTuple):
    lcp: int
    tail: tuple


def _frozen(a, dtype=np.int64) -> np.ndarray:
    arr = np.ascontiguousarray(a, dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class LevelDictionary:
    """Sorted rules of one recursion level plus the prefix rule.

    Rule ``i`` (name ``i + 1``) has body ``body[i-1][:lcp[i]] + tail_i`` where
    ``tail_i`` is the next ``tail_len[i]`` symbols of ``tails``. Bodies are
    written over the alphabet of the level below (``rhs_alphabet_size``).
    """

    level: int
    sigma: int
    lcp: np.ndarray
    tail_len: np.ndarray
    tails: np.ndarray
    prefix_rule: np.ndarray
    rhs_alphabet_size: int

    def __post_init__(self):
        for name in ("lcp", "tail_len"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))
        for name in ("tails", "prefix_rule"):
            object.__setattr__(self, name, _frozen(getattr(self, name), SYMBOL_DTYPE))

    @classmethod
    def from_rules(cls, level, rules, prefix_rule, rhs_alphabet_size) -> "LevelDictionary":
        lcp = [r[0] for r in rules]
        tails = [list(r[1]) for r in rules]
        flat = [s for tail in tails for s in tail]
        return cls(level, len(rules), lcp, [len(x) for x in tails], flat,
                   list(prefix_rule), rhs_alphabet_size)

    @property
    def rules(self) -> list[Rule]:
        out = []
        pos = 0
        for l, k in zip(self.lcp.tolist(), self.tail_len.tolist()):
            out.append(Rule(l, tuple(self.tails[pos:pos + k].tolist())))
            pos += k
        return out

    def __eq__(self, other):
        if not isinstance(other, LevelDictionary):
            return NotImplemented
        return (
            self.level == other.level
            and self.sigma == other.sigma
            and self.rhs_alphabet_size == other.rhs_alphabet_size
            and np.array_equal(self.lcp, other.lcp)
            and np.array_equal(self.tail_len, other.tail_len)
            and np.array_equal(self.tails, other.tails)
            and np.array_equal(self.prefix_rule, other.prefix_rule)
        )


@dataclass(frozen=True, eq=False)
class Grammar:
    levels: tuple  # LevelDictionary, level 1 first
    final_text: Text
    original_len: int  # bytes of the original input (sentinel excluded)

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(self.levels))

    def __eq__(self, other):
        if not isinstance(other, Grammar):
            return NotImplemented
        return (
            self.original_len == other.original_len
            and self.levels == other.levels
            and self.final_text == other.final_text
        )
