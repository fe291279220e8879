"""Command-line front end: ``gcis {compress,decompress,stat,verify,bench}``.

Exit codes: 0 ok, 1 usage error, 2 I/O error, 3 corrupt archive,
4 verify mismatch. ``-`` stands for stdin/stdout. ``GCIS_LOG`` sets the log
level (e.g. ``GCIS_LOG=debug``).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from . import compress, decompress
from .bench import RoundtripError, parse_corpus, ratio_percent, run_bench
from .codec import deserialize, encode_final_text, encode_level
from .errors import CorruptArchiveError, GCISError
from .grammar_builder import level_lengths

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_CORRUPT, EXIT_MISMATCH = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def _write(path: str, data: bytes) -> None:
    if path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
        return
    with open(path, "wb") as fh:
        fh.write(data)


def _compress_opts(args) -> dict:
    return {"max_levels": args.max_levels, "greedy_stop": not args.no_greedy_stop}


def archive_stats(archive: bytes) -> dict:
    """Per-level summary of an archive, as printed by ``gcis stat``."""
    g = deserialize(archive)
    lengths = level_lengths(g)
    levels = []
    for d in g.levels:
        levels.append({
            "level": d.level,
            "input_length": lengths[d.level - 1] - 1,
            "sigma": d.sigma,
            "rules": d.sigma,
            "prefix_length": len(d.prefix_rule),
            "encoded_bytes": len(encode_level(d)),
        })
    return {
        "original_bytes": g.original_len,
        "archive_bytes": len(archive),
        "ratio_percent": ratio_percent(len(archive), g.original_len),
        "level_count": len(g.levels),
        "final_length": len(g.final_text) - 1,
        "final_alphabet": g.final_text.alphabet_size,
        "final_encoded_bytes": len(encode_final_text(g.final_text)),
        "levels": levels,
    }


def _format_stats(st: dict, fmt: str) -> str:
    if fmt == "json":
        out = dict(st)
        if out["ratio_percent"] != out["ratio_percent"]:
            out["ratio_percent"] = None
        return json.dumps(out, indent=2)
    if fmt == "csv":
        rows = ["level,input_length,sigma,rules,prefix_length,encoded_bytes"]
        rows += [",".join(str(lv[k]) for k in ("level", "input_length", "sigma", "rules",
                                                 "prefix_length", "encoded_bytes"))
                 for lv in st["levels"]]
        return "\n".join(rows)
    ratio = st["ratio_percent"]
    lines = [
        f"original bytes : {st['original_bytes']}",
        f"archive bytes  : {st['archive_bytes']}",
        f"ratio          : {'n/a' if ratio != ratio else f'{ratio:.4f}%'}",
        f"levels         : {st['level_count']}",
    ]
    for lv in st["levels"]:
        lines.append(f"  level {lv['level']}: n={lv['input_length']} sigma={lv['sigma']} "
                     f"rules={lv['rules']} prefix={lv['prefix_length']} "
                     f"encoded={lv['encoded_bytes']}B")
    lines.append(f"final text     : n={st['final_length']} alphabet={st['final_alphabet']} "
                 f"encoded={st['final_encoded_bytes']}B")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gcis", description="Grammar compression by induced suffix sorting.")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def tuning(sp):
        sp.add_argument("--max-levels", type=int, default=None, metavar="N",
                        help="stop after N recursion levels")
        sp.add_argument("--no-greedy-stop", action="store_true",
                        help="recurse until factors are distinct, even if it costs space")

    sp = sub.add_parser("compress", help="compress a file into an archive")
    sp.add_argument("input")
    sp.add_argument("output")
    tuning(sp)

    sp = sub.add_parser("decompress", help="restore the original bytes")
    sp.add_argument("input")
    sp.add_argument("output")

    sp = sub.add_parser("stat", help="describe the levels of an archive")
    sp.add_argument("input")
    sp.add_argument("--format", choices=("text", "csv", "json"), default="text")

    sp = sub.add_parser("verify", help="compress, decompress and compare")
    sp.add_argument("input")
    tuning(sp)

    sp = sub.add_parser("bench", help="ratio and timing table over corpora")
    sp.add_argument("--corpus", action="append", default=[], metavar="SPEC",
                    help="fib:k=K | tm:n=N | rand:n=N,sigma=S,seed=X | "
                         "periodic:n=N,period=P,seed=X | file:PATH (repeatable)")
    sp.add_argument("--trials", type=int, default=3)
    sp.add_argument("--format", choices=("text", "csv", "json"), default="text")
    tuning(sp)
    return p


def run(argv=None) -> int:
    level = os.environ.get("GCIS_LOG")
    if level:
        logging.basicConfig(level=level.upper(), format="%(levelname)s %(name)s: %(message)s")
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE

    try:
        if args.verb == "compress":
            _write(args.output, compress(_read(args.input), **_compress_opts(args)))
        elif args.verb == "decompress":
            _write(args.output, decompress(_read(args.input)))
        elif args.verb == "stat":
            print(_format_stats(archive_stats(_read(args.input)), args.format))
        elif args.verb == "verify":
            data = _read(args.input)
            archive = compress(data, **_compress_opts(args))
            if decompress(archive) != data:
                print("verify: MISMATCH", file=sys.stderr)
                return EXIT_MISMATCH
            print(f"verify: ok ({len(data)} -> {len(archive)} bytes, "
                  f"{ratio_percent(len(archive), len(data)):.4f}%)")
        elif args.verb == "bench":
            specs = args.corpus or ["fib:k=25", "tm:n=262144", "rand:n=262144,sigma=256,seed=0"]
            try:
                corpora = [parse_corpus(s) for s in specs]
            except ValueError as exc:
                print(f"gcis bench: {exc}", file=sys.stderr)
                return EXIT_USAGE
            report = run_bench(corpora, trials=args.trials, **_compress_opts(args))
            print(report.format(args.format))
    except OSError as exc:
        print(f"gcis: {exc}", file=sys.stderr)
        return EXIT_IO
    except RoundtripError as exc:
        print(f"gcis: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except CorruptArchiveError as exc:
        print(f"gcis: corrupt archive: {exc}", file=sys.stderr)
        return EXIT_CORRUPT
    except GCISError as exc:
        print(f"gcis: {exc}", file=sys.stderr)
        return EXIT_CORRUPT
    return EXIT_OK


def main() -> None:
    sys.exit(run())
