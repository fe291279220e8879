"""
The integer codecs behind the archive
=====================================

Rule lcps and tail lengths go through Simple8b; symbols are bit-packed at a
fixed width.
"""

import numpy as np

from gcis.codec import pack_fixed, s8b_decode, s8b_encode, unpack_fixed
from gcis.codec.simple8b import selector

# small values pack many to a word: 60 one-bit values fit in a single word
words = s8b_encode([1] * 60)
print(len(words), "word, selector", selector(words[0]))

# a long run of zeros uses the run selectors
words = s8b_encode([0] * 240)
print(len(words), "word, selector", selector(words[0]))

# mixed magnitudes: the encoder picks the densest layout for each word
rng = np.random.default_rng(0)
vals = rng.integers(0, 16, 1000, dtype=np.uint64)
vals[::100] = 1 << 40
words = s8b_encode(vals)
print(len(vals), "values ->", len(words), "words")
assert np.array_equal(s8b_decode(words, len(vals)), vals)

# fixed-width packing: 1000 symbols of 9 bits take 141 words
syms = rng.integers(0, 257, 1000)
packed = pack_fixed(syms, 9)
print(packed.count, "symbols at", packed.width, "bits ->", len(packed.words), "words")
assert np.array_equal(unpack_fixed(packed), syms)
