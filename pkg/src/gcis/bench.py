"""Synthetic corpora and a ratio/timing benchmark runner.

Corpus specs (as accepted by ``parse_corpus`` and the ``bench`` command)::

    fib:k=30                      Fibonacci word S_k
    tm:n=1048576                  Thue-Morse prefix of length n
    rand:n=1048576,sigma=256,seed=0
    periodic:n=1048576,period=1000,seed=0
    file:/path/to/corpus
"""

from __future__ import annotations

import csv
import io
import json
import statistics
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .errors import GCISError

MAX_CORPUS_BYTES = 1 << 30


class RoundtripError(GCISError):
    """Decompressed output differs from the benchmark input."""


def gen_fibonacci(k: int, cap: int = MAX_CORPUS_BYTES) -> bytes:
    """Fibonacci word: S1 = "a", S2 = "ab", Sk = Sk-1 Sk-2 (length Fib(k+1))."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    prev, cur = b"a", b"ab"
    if k == 1:
        return prev
    for _ in range(k - 2):
        if len(cur) + len(prev) > cap:
            raise ValueError(f"S_{k} exceeds the {cap}-byte corpus cap")
        prev, cur = cur, cur + prev
    return cur


def gen_thue_morse(n: int) -> bytes:
    """Symbol i is 'a' when popcount(i) is even, else 'b'."""
    bits = np.zeros(1, dtype=np.uint8)
    while len(bits) < n:
        bits = np.concatenate((bits, 1 - bits))
    return (bits[:n] + ord("a")).tobytes()


def gen_random(n: int, sigma: int = 256, seed: int = 0) -> bytes:
    """``n`` i.i.d. uniform bytes in ``[0, sigma)`` from numpy's PCG64 stream."""
    if not 1 <= sigma <= 256:
        raise ValueError(f"sigma must be in [1, 256], got {sigma}")
    rng = np.random.Generator(np.random.PCG64(seed))
    return rng.integers(0, sigma, size=n, dtype=np.uint8).tobytes()


def gen_periodic(n: int, period: int = 1000, seed: int = 0) -> bytes:
    """A random block of ``period`` bytes repeated to length ``n``."""
    block = np.frombuffer(gen_random(period, 256, seed), dtype=np.uint8)
    reps = -(-n // period) if period else 0
    return np.tile(block, reps)[:n].tobytes()


_GENERATORS = {
    "fib": (gen_fibonacci, {"k": int}),
    "tm": (gen_thue_morse, {"n": int}),
    "rand": (gen_random, {"n": int, "sigma": int, "seed": int}),
    "periodic": (gen_periodic, {"n": int, "period": int, "seed": int}),
}


def parse_corpus(spec: str) -> tuple[str, bytes]:
    """Resolve a corpus spec into ``(name, data)``."""
    kind, _, args = spec.partition(":")
    if kind == "file":
        path = Path(args)
        return path.name, path.read_bytes()
    if kind not in _GENERATORS:
        raise ValueError(f"unknown corpus kind {kind!r} in {spec!r}")
    fn, params = _GENERATORS[kind]
    kwargs = {}
    for item in filter(None, args.split(",")):
        key, eq, value = item.partition("=")
        if not eq or key not in params:
            raise ValueError(f"bad parameter {item!r} for corpus {kind!r}")
        kwargs[key] = params[key](value)
    return spec, fn(**kwargs)


@dataclass
class BenchRow:
    corpus: str
    input_size: int
    compressed_size: int
    ratio: float  # compressed / input * 100
    compress_seconds: float
    decompress_seconds: float
    levels: int


@dataclass
class BenchReport:
    rows: list = field(default_factory=list)

    COLUMNS = ("corpus", "input_size", "compressed_size", "ratio", "compress_seconds",
               "decompress_seconds", "levels")

    def format(self, fmt: str = "text") -> str:
        if fmt == "json":
            return json.dumps([asdict(r) for r in self.rows], indent=2)
        if fmt == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(self.COLUMNS)
            for r in self.rows:
                w.writerow([getattr(r, c) for c in self.COLUMNS])
            return buf.getvalue()
        if fmt != "text":
            raise ValueError(f"unknown report format {fmt!r}")
        lines = [f"{'corpus':<36} {'input':>12} {'output':>12} {'ratio%':>9} "
                 f"{'comp s':>8} {'decomp s':>9} {'levels':>6}"]
        for r in self.rows:
            lines.append(f"{r.corpus[:36]:<36} {r.input_size:>12} {r.compressed_size:>12} "
                         f"{r.ratio:>9.3f} {r.compress_seconds:>8.3f} "
                         f"{r.decompress_seconds:>9.3f} {r.levels:>6}")
        return "\n".join(lines)


def ratio_percent(compressed: int, original: int) -> float:
    return 100.0 * compressed / original if original else float("nan")


def run_bench(corpora, trials: int = 3, **compress_opts) -> BenchReport:
    """Compress and decompress each ``(name, data)`` corpus ``trials`` times.

    Times are medians over trials and exclude I/O. Every row is verified to
    roundtrip before it is reported.
    """
    from . import compress, decompress
    from .codec import deserialize

    report = BenchReport()
    for name, data in corpora:
        ctimes, dtimes = [], []
        archive = out = None
        for _ in range(max(1, trials)):
            t0 = time.perf_counter()
            archive = compress(data, **compress_opts)
            t1 = time.perf_counter()
            out = decompress(archive)
            t2 = time.perf_counter()
            ctimes.append(t1 - t0)
            dtimes.append(t2 - t1)
            if out != data:
                raise RoundtripError(f"roundtrip mismatch on corpus {name!r}")
        report.rows.append(BenchRow(
            corpus=name,
            input_size=len(data),
            compressed_size=len(archive),
            ratio=ratio_percent(len(archive), len(data)),
            compress_seconds=statistics.median(ctimes),
            decompress_seconds=statistics.median(dtimes),
            levels=len(deserialize(archive).levels),
        ))
    return report
