"""
Compression ratio on repetitive and random inputs
=================================================

Highly repetitive texts collapse to a few levels of small grammars; random
bytes do not compress at all.
"""

import gcis
from gcis.bench import gen_fibonacci, gen_periodic, gen_random, gen_thue_morse, run_bench
from gcis.cli import archive_stats

corpora = [
    ("fibonacci k=27", gen_fibonacci(27)),
    ("thue-morse 2^18", gen_thue_morse(1 << 18)),
    ("periodic p=500", gen_periodic(1 << 18, 500, seed=1)),
    ("random sigma=4", gen_random(1 << 18, 4, seed=1)),
    ("random sigma=256", gen_random(1 << 18, 256, seed=1)),
]

report = run_bench(corpora, trials=1)
print(report.format("text"))

# how the fibonacci word shrinks level by level
st = archive_stats(gcis.compress(corpora[0][1]))
for lv in st["levels"]:
    print("level %(level)d: n=%(input_length)d sigma=%(sigma)d encoded=%(encoded_bytes)dB" % lv)
print("final text:", st["final_length"], "symbols")

# the recursion can be capped; the archive grows but still round-trips
capped = gcis.compress(corpora[0][1], max_levels=2)
print("two levels only:", len(capped), "bytes")
assert gcis.decompress(capped) == corpora[0][1]
