"""Brute-force reference implementations for tests.

Nothing here touches the production kernels or the codec; every function
works on plain Python lists and favors the obvious formulation over speed.
"""

from __future__ import annotations

from functools import cmp_to_key

MAX_ORACLE_LEN = 64 * 1024


def _symbols(t) -> list:
    syms = t.symbols.tolist() if hasattr(t, "symbols") else list(t)
    if len(syms) > MAX_ORACLE_LEN:
        raise ValueError(f"oracle input capped at {MAX_ORACLE_LEN} symbols")
    return syms


def _suffix_less(s, i, j) -> bool:
    """Literal lexicographic test ``s[i:] < s[j:]`` without slicing."""
    n = len(s)
    while i < n and j < n:
        if s[i] != s[j]:
            return s[i] < s[j]
        i += 1
        j += 1
    return i == n and j < n


def naive_classify(t) -> tuple[list[bool], list[int]]:
    """S/L type per position by comparing each suffix with its right neighbor.

    Returns ``(is_s, lms)`` with 0-based positions.
    """
    s = _symbols(t)
    n = len(s)
    is_s = [_suffix_less(s, i, i + 1) for i in range(n - 1)] + [True]
    lms = [i for i in range(1, n) if is_s[i] and not is_s[i - 1]]
    return is_s, lms


def factor_key(s, is_s, start, end) -> tuple:
    """A factor as (symbol, type) pairs; L sorts before S on equal symbols."""
    return tuple((s[p], 1 if is_s[p] else 0) for p in range(start, end + 1))


def naive_lms_order(t, factors) -> list[int]:
    """Stable sort of factor indices by their (symbol, type) sequences."""
    s = _symbols(t)
    is_s, _ = naive_classify(s)
    facs = [(int(a), int(b)) for a, b in factors]
    keys = [factor_key(s, is_s, a, b) for a, b in facs]

    def cmp(x, y):
        kx, ky = keys[x], keys[y]
        return (kx > ky) - (kx < ky)

    return sorted(range(len(facs)), key=cmp_to_key(cmp))


def naive_factors(t) -> list[tuple[int, int]]:
    s = _symbols(t)
    _, lms = naive_classify(s)
    n = len(s)
    if not lms or lms[-1] != n - 1:
        lms = lms + [n - 1]
    return [(lms[k], lms[k + 1] if k + 1 < len(lms) else n - 1) for k in range(len(lms))]


def front_decode(rules) -> list[list[int]]:
    bodies = []
    for lcp, tail in rules:
        prev = bodies[-1] if bodies else []
        bodies.append(prev[:lcp] + list(tail))
    return bodies


def front_encode(bodies) -> list[tuple[int, tuple]]:
    """(lcp with previous body, remaining tail) for each body in order."""
    out = []
    prev = []
    for body in bodies:
        body = list(body)
        l = 0
        while l < min(len(prev), len(body)) and prev[l] == body[l]:
            l += 1
        out.append((l, tuple(body[l:])))
        prev = body
    return out


def naive_expand(g) -> bytes:
    """Substitute rule bodies level by level, top down, in plain Python."""
    text = [int(v) for v in g.final_text.symbols.tolist()[:-1]]
    for d in reversed(g.levels):
        bodies = front_decode(d.rules)
        out = [int(v) for v in d.prefix_rule.tolist()]
        for v in text:
            out.extend(bodies[v - 1])
        text = out
    return bytes(v - 1 for v in text)
