"""
One level of grammar compression, step by step
===============================================

Follows the six-byte text "banana" through suffix typing, LMS factorization,
naming, and the archive round trip.
"""

import gcis
from gcis.grammar_builder import reduce_once
from gcis.suffix_classify import classify_types, factorize, sort_lms
from gcis.text_model import from_bytes

# bytes are shifted up by one so that 0 can serve as the sentinel
t = from_bytes(b"banana")
print("symbols      ", t.symbols.tolist())

# S/L type of every suffix, and the leftmost-S positions
m = classify_types(t)
print("types        ", m.types())
print("LMS positions", m.lms.tolist())

# neighbouring factors overlap in one position; the last one is the sentinel
f = factorize(t, m)
for start, end in f:
    print("  factor", start, end, t.symbols[start:end + 1].tolist())

# induced sorting puts the factors in lexicographic order
order = sort_lms(t, m, f)
print("sorted factor indices", order.tolist())

# one level of reduction: a dictionary of rules plus a shorter text of names
d, reduced = reduce_once(t)
print("rules (lcp, tail)", d.rules)
print("prefix rule      ", d.prefix_rule.tolist())
print("reduced text     ", reduced.symbols.tolist(), "alphabet", reduced.alphabet_size)

# the full compressor stops here: the three factors are already distinct
archive = gcis.compress(b"banana")
print(len(archive), "archive bytes")
assert gcis.decompress(archive) == b"banana"
