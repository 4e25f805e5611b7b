"""Command-line front end.

Exit status is 0 on success (or "found" for ``query exists``), 1 when
``query exists`` finds nothing, and 2 for usage, format and validation
errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import corpora
from .access import DEFAULT_CACHE_CAPACITY, RandomAccess
from .bench import DEFAULT_LENGTHS, DEFAULT_REPS, run_bench
from .cdawg import build_cdawg, deserialize_cdawg, serialize_cdawg
from .errors import FormatError, ScaleError, SlgIndexError
from .external import import_repair
from .grammar import BINARY_MAGIC, Grammar, expand_bytes, grammar_stats, load_grammar, save_grammar
from .matcher import count, exists, locate
from .oracle import MAX_REPEAT_TEXT, maximal_repeats
from .repair import repair_compress


CORPUS_NAMES = ["dna", "english", "records", "fibonacci", "thue-morse", "dna-clean", "dna-runs"]


def _read_grammar(path: str, fmt: str) -> Grammar:
    data = Path(path).read_bytes()
    if fmt == "auto":
        fmt = "binary" if data[:4] == BINARY_MAGIC else "text"
    return load_grammar(data, fmt)


def _write_grammar(g: Grammar, path: str, fmt: str) -> None:
    Path(path).write_bytes(save_grammar(g, "binary" if fmt == "auto" else fmt))


def _pattern(arg: str) -> bytes:
    if arg.startswith("@"):
        return Path(arg[1:]).read_bytes()
    return os.fsencode(arg)


def _lengths(arg: str) -> list[int]:
    try:
        return [int(x) for x in arg.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad length list {arg!r}")


def cmd_compress(args) -> int:
    text = Path(args.input).read_bytes()
    g = repair_compress(text)
    _write_grammar(g, args.output, args.format)
    print(f"n={g.n} rules={len(g.rules)} size={g.size} depth={g.height}")
    return 0


def cmd_import(args) -> int:
    g = import_repair(Path(args.rfile).read_bytes(), Path(args.cfile).read_bytes())
    _write_grammar(g, args.output, args.format)
    print(f"n={g.n} rules={len(g.rules)} size={g.size} depth={g.height}")
    return 0


def cmd_index(args) -> int:
    g = _read_grammar(args.grammar, args.format)
    ra = RandomAccess(g, cache_capacity=args.cache_capacity)
    c = build_cdawg(g, ra.index, ra.cache, ra.counters)
    Path(args.output).write_bytes(serialize_cdawg(c))
    k = ra.counters
    print(f"nodes={c.num_nodes} edges={c.num_edges}")
    print(f"ra_calls={k.ra_calls} cache_hits={k.cache_hits} cache_misses={k.cache_misses} "
          f"hit_rate={k.hit_rate:.4f}")
    return 0


def _load_pair(args):
    g = _read_grammar(args.grammar, args.format)
    c = deserialize_cdawg(Path(args.cdawg).read_bytes())
    if c.n != g.n:
        raise FormatError(f"index is for a text of length {c.n}, grammar produces {g.n}")
    return g, c


def cmd_query(args) -> int:
    g, c = _load_pair(args)
    ra = RandomAccess(g)
    pattern = _pattern(args.pattern)
    if args.mode == "exists":
        return 0 if exists(c, ra, pattern) else 1
    if args.mode == "count":
        print(count(c, ra, pattern))
        return 0
    out = sys.stdout
    for p in locate(c, ra, pattern):
        out.write(f"{p}\n")
    return 0


def cmd_stats(args) -> int:
    g = _read_grammar(args.grammar, args.format)
    st = grammar_stats(g)
    if args.oracle and g.n > MAX_REPEAT_TEXT:
        raise ScaleError(f"--oracle is limited to texts of {MAX_REPEAT_TEXT} bytes, got {g.n}")
    report: dict = {"n": st.n, "rules": st.rules, "depth": st.depth, "size": st.size,
                    "start_length": st.start_length}
    c = None
    if args.cdawg:
        c = deserialize_cdawg(Path(args.cdawg).read_bytes())
    elif args.oracle:
        c = build_cdawg(g)
    if c is not None:
        report["cdawg_nodes"] = c.num_nodes
        report["cdawg_edges"] = c.num_edges
        report["er"] = c.num_edges
        report["grammar_smaller"] = st.size < c.num_edges
    if args.oracle:
        rep = maximal_repeats(expand_bytes(g))
        report["oracle_er"] = rep.er
        report["oracle_el"] = rep.el
        report["oracle_maximal_repeats"] = len(rep.maximal_repeats)
        report["verdict"] = (
            "MATCH" if rep.er == c.num_edges and len(rep.maximal_repeats) + 1 == c.num_nodes
            else "MISMATCH"
        )
    if args.json:
        print(json.dumps(report, sort_keys=True))
    else:
        labels = {"size": "Size(N)", "depth": "Depth(H)", "start_length": "|R[S]|"}
        width = max(len(labels.get(k, k)) for k in report)
        for key, value in report.items():
            if isinstance(value, bool):
                value = "yes" if value else "no"
            print(f"{labels.get(key, key):<{width}}  {value}")
    if args.oracle and report["verdict"] != "MATCH":
        return 2
    return 0


def cmd_bench(args) -> int:
    g, c = _load_pair(args)
    ra = RandomAccess(g)
    report = run_bench(c, ra, args.lengths, args.reps, args.seed)
    if args.json:
        print(json.dumps(report.as_dict(), sort_keys=True))
    else:
        print(report.format_table())
    return 0


def cmd_corpus(args) -> int:
    if args.name == "dna-runs":
        text = corpora.dna_collection(n_fraction=0.01, seed=args.seed)
    elif args.name == "dna-clean":
        text = corpora.dna_collection(seed=args.seed)
    else:
        text = corpora.desk_corpora()[args.name]
    Path(args.output).write_bytes(text)
    print(f"{args.name}: {len(text)} bytes")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="slgindex",
        description="CDAWG index over grammar-compressed text.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def grammar_format(p, default="auto"):
        p.add_argument("--format", choices=["auto", "binary", "text"], default=default,
                       help="grammar file format (default: %(default)s)")

    p = sub.add_parser("compress", help="Re-Pair compress a file into an SLG1 grammar")
    p.add_argument("input")
    p.add_argument("-o", "--output", required=True)
    grammar_format(p)
    p.set_defaults(func=cmd_compress)

    p = sub.add_parser("import", help="convert Navarro Re-Pair .R/.C output to SLG1")
    p.add_argument("rfile")
    p.add_argument("cfile")
    p.add_argument("-o", "--output", required=True)
    grammar_format(p)
    p.set_defaults(func=cmd_import)

    p = sub.add_parser("index", help="build the CDAWG index of a grammar")
    p.add_argument("grammar")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--cache-capacity", type=int, default=DEFAULT_CACHE_CAPACITY)
    grammar_format(p)
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("query", help="exists / count / locate a pattern")
    p.add_argument("grammar")
    p.add_argument("cdawg")
    p.add_argument("mode", choices=["exists", "count", "locate"])
    p.add_argument("pattern", help="pattern bytes, or @FILE to read them from a file")
    grammar_format(p)
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("stats", help="grammar and index statistics")
    p.add_argument("grammar")
    p.add_argument("--cdawg")
    p.add_argument("--oracle", action="store_true",
                   help="cross-check with brute-force maximal repeats (small texts only)")
    p.add_argument("--json", action="store_true")
    grammar_format(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("bench", help="time locate on random substrings")
    p.add_argument("grammar")
    p.add_argument("cdawg")
    p.add_argument("--lengths", type=_lengths, default=list(DEFAULT_LENGTHS))
    p.add_argument("--reps", type=int, default=DEFAULT_REPS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    grammar_format(p)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("corpus", help="write one of the bundled synthetic corpora")
    p.add_argument("name", choices=CORPUS_NAMES)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SlgIndexError, OSError, ValueError) as exc:
        print(f"slgindex: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
