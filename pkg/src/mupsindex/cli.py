"""Command-line front end: list MUPSs, answer substitution queries,
differentially verify against the brute-force oracle, and benchmark.

Output is one structured-text document per invocation (key: value lines,
array fields one row per line) or JSON with --json. Exit codes: 0 ok,
1 usage, 2 I/O, 3 verification mismatch.
"""

import argparse
import json
import math
import random
import statistics
import sys
import time
from typing import List, Optional, Tuple

from . import oracle
from .core import Interval, Text, apply_substitution, make_substitution, make_text
from .index import SubstIndex, build_subst_index, mups_delta_typed
from .lce import build_lce
from .palindromes import build_eertree
from .static_mups import compute_mups


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _emit(doc: List[Tuple[str, object]], as_json: bool, out=None) -> None:
    out = out or sys.stdout
    if as_json:
        json.dump(dict(doc), out, ensure_ascii=True)
        out.write("\n")
        return
    for key, val in doc:
        if isinstance(val, list):
            if not val:
                out.write(f"{key}:\n")
            for row in val:
                out.write(f"{key}: " + " ".join(str(x) for x in row) + "\n")
        else:
            out.write(f"{key}: {val}\n")


def _load_text(args) -> str:
    if args.text is not None:
        raw = args.text
    elif args.file is not None:
        try:
            with open(args.file, "rb") as fh:
                raw = fh.read().decode("latin-1")
        except OSError as exc:
            raise IOError(f"cannot read {args.file}: {exc}") from exc
    else:
        raise UsageError("one of --text or --file is required")
    if not raw:
        raise IOError("input text is empty")
    return raw


def _mups_rows(text: str, intervals) -> List[List[object]]:
    return [[iv.b, iv.e, text[iv.b - 1 : iv.e]] for iv in intervals]


def cmd_list(args) -> int:
    raw = _load_text(args)
    t = make_text(raw)
    mups, _ = compute_mups(t, build_eertree(t, lce=build_lce(t)))
    doc = [
        ("n", t.n),
        ("count", len(mups)),
        ("mups", _mups_rows(raw, mups)),
    ]
    _emit(doc, args.json)
    return 0


def _parse_query(t: Text, raw: str, args):
    if args.pos is None or args.to is None:
        raise UsageError("delta/after need --pos and --to")
    if len(args.to) != 1:
        raise UsageError("--to must be a single character")
    if not (1 <= args.pos <= t.n):
        raise UsageError(f"--pos {args.pos} out of range 1..{t.n}")
    if raw[args.pos - 1] == args.to:
        raise UsageError("substitution must change the character")
    return make_substitution(t, args.pos, args.to)


def cmd_delta(args) -> int:
    raw = _load_text(args)
    t = make_text(raw)
    q = _parse_query(t, raw, args)
    ix = build_subst_index(t)
    t0 = time.perf_counter_ns()
    removed, added = mups_delta_typed(ix, q)
    micros = (time.perf_counter_ns() - t0) // 1000
    t2 = raw[: q.i - 1] + args.to + raw[q.i :]
    doc = [
        ("n", t.n),
        ("pos", q.i),
        ("to", args.to),
        ("removed", [[iv.b, iv.e, tag, raw[iv.b - 1 : iv.e]] for iv, tag in removed]),
        ("added", [[iv.b, iv.e, tag, t2[iv.b - 1 : iv.e]] for iv, tag in added]),
        ("micros", micros),
    ]
    _emit(doc, args.json)
    return 0


def cmd_after(args) -> int:
    raw = _load_text(args)
    t = make_text(raw)
    q = _parse_query(t, raw, args)
    ix = build_subst_index(t)
    from .index import mups_after

    after = mups_after(ix, q)
    t2 = raw[: q.i - 1] + args.to + raw[q.i :]
    doc = [
        ("n", t.n),
        ("count", len(after)),
        ("mups", _mups_rows(t2, after)),
    ]
    _emit(doc, args.json)
    return 0


def _random_text(rng: random.Random, n: int, sigma: int) -> str:
    return "".join(chr(ord("a") + rng.randrange(sigma)) for _ in range(n))


def _fast_delta(text: str, i: int, s: str):
    t = make_text(text)
    ix = build_subst_index(t)
    d = mups_delta_typed(ix, make_substitution(t, i, s))
    removed = [iv.as_tuple() for iv, _ in d[0]]
    added = [iv.as_tuple() for iv, _ in d[1]]
    return removed, added


def _shrink_mismatch(text: str, i: int, s: str) -> Tuple[str, int, str]:
    """Chop characters off both ends while the mismatch persists."""

    def mismatches(tx: str, ii: int) -> bool:
        if not (1 <= ii <= len(tx)) or tx[ii - 1] == s:
            return False
        return _fast_delta(tx, ii, s) != oracle.naive_delta(tx, ii, s)

    changed = True
    while changed and len(text) > 1:
        changed = False
        if i < len(text) and mismatches(text[:-1], i):
            text = text[:-1]
            changed = True
        elif i > 1 and mismatches(text[1:], i - 1):
            text, i = text[1:], i - 1
            changed = True
    return text, i, s


def cmd_verify(args) -> int:
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    rng = random.Random(args.seed)
    sigma = max(args.sigma, 1)
    total_queries = 0
    for _ in range(args.trials):
        text = _random_text(rng, args.n, sigma)
        t = make_text(text)
        ix = build_subst_index(t)
        alphabet = sorted(set(text)) + [chr(ord("a") + sigma)]  # plus a fresh symbol
        queries = [(i, s) for i in range(1, t.n + 1) for s in alphabet if text[i - 1] != s]
        if args.queries and len(queries) > args.queries:
            queries = rng.sample(queries, args.queries)
        for i, s in queries:
            total_queries += 1
            q = make_substitution(t, i, s)
            d = mups_delta_typed(ix, q)
            got = ([iv.as_tuple() for iv, _ in d[0]], [iv.as_tuple() for iv, _ in d[1]])
            want = oracle.naive_delta(text, i, s)
            if got != want:
                text2, i2, s2 = _shrink_mismatch(text, i, s)
                doc = [
                    ("status", "fail"),
                    ("queries", total_queries),
                    ("text", text2),
                    ("pos", i2),
                    ("to", s2),
                    ("expected_removed", [list(x) for x in oracle.naive_delta(text2, i2, s2)[0]]),
                    ("expected_added", [list(x) for x in oracle.naive_delta(text2, i2, s2)[1]]),
                    ("got_removed", [list(x) for x in _fast_delta(text2, i2, s2)[0]]),
                    ("got_added", [list(x) for x in _fast_delta(text2, i2, s2)[1]]),
                ]
                _emit(doc, args.json)
                return 3
    doc = [
        ("n", args.n),
        ("sigma", sigma),
        ("trials", args.trials),
        ("queries", total_queries),
        ("mismatches", 0),
        ("status", "pass"),
    ]
    _emit(doc, args.json)
    return 0


def _render_figures(figdir: str, dsizes: List[int], micros: List[float]) -> List[str]:
    import os

    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    os.makedirs(figdir, exist_ok=True)
    written = []

    fig, ax = plt.subplots(figsize=(6, 4))
    top = max(dsizes) if dsizes else 1
    ax.hist(dsizes, bins=range(0, top + 2), color="#4878d0", edgecolor="black")
    ax.set_xlabel("MUPS changes per query (d)")
    ax.set_ylabel("queries")
    ax.set_title("Delta sizes")
    path = os.path.join(figdir, "delta_sizes.png")
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    written.append(path)

    fig, ax = plt.subplots(figsize=(6, 4))
    ax.hist(micros, bins=50, color="#ee854a", edgecolor="black")
    ax.set_xlabel("query time (microseconds)")
    ax.set_ylabel("queries")
    ax.set_title("Query latency")
    path = os.path.join(figdir, "query_micros.png")
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    written.append(path)
    return written


def cmd_bench(args) -> int:
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    rng = random.Random(args.seed)
    sigma = max(args.sigma, 1)
    text = _random_text(rng, args.n, sigma)
    t = make_text(text)
    t0 = time.perf_counter_ns()
    ix = build_subst_index(t)
    build_micros = (time.perf_counter_ns() - t0) // 1000

    micros: List[float] = []
    dsizes: List[int] = []
    alphabet = [chr(ord("a") + k) for k in range(sigma + 1)]  # one fresh symbol
    rows = []
    for _ in range(args.queries):
        i = rng.randrange(1, t.n + 1)
        choices = [s for s in alphabet if s != text[i - 1]]
        s = rng.choice(choices)
        q = make_substitution(t, i, s)
        t1 = time.perf_counter_ns()
        removed, added = mups_delta_typed(ix, q)
        dt = (time.perf_counter_ns() - t1) / 1000.0
        micros.append(dt)
        dsizes.append(len(removed) + len(added))
        rows.append((i, s, len(removed) + len(added), dt))

    log2n = math.log2(args.n) if args.n > 1 else 1.0
    max_d = max(dsizes) if dsizes else 0
    doc = [
        ("n", args.n),
        ("sigma", sigma),
        ("seed", args.seed),
        ("queries", args.queries),
        ("build_micros", build_micros),
        ("p50_micros", round(statistics.median(micros), 2) if micros else 0),
        (
            "p99_micros",
            round(
                statistics.quantiles(micros, n=100)[98] if len(micros) >= 100 else (max(micros) if micros else 0),
                2,
            ),
        ),
        ("max_d", max_d),
        ("log2n", round(log2n, 3)),
        ("max_d_over_log2n", round(max_d / log2n, 3)),
    ]
    if args.figdir:
        import os

        written = _render_figures(args.figdir, dsizes, micros)
        tsv = os.path.join(args.figdir, "bench_queries.tsv")
        with open(tsv, "w") as fh:
            fh.write("pos\tto\td\tmicros\n")
            for i, s, d, dt in rows:
                fh.write(f"{i}\t{s}\t{d}\t{dt:.2f}\n")
        written.append(tsv)
        doc.append(("figures", [[p] for p in written]))
    _emit(doc, args.json)
    return 0


def _build_parser() -> _Parser:
    p = _Parser(prog="mupsindex", description=__doc__)
    sub = p.add_subparsers(dest="cmd", required=True)

    def add_input(sp):
        sp.add_argument("--text", help="inline input string")
        sp.add_argument("--file", help="read input as bytes from this path")
        sp.add_argument("--json", action="store_true", help="emit JSON instead of text")

    sp = sub.add_parser("list", help="list all MUPSs of the input")
    add_input(sp)
    sp.set_defaults(fn=cmd_list)

    for name, fn, help_ in (
        ("delta", cmd_delta, "removed/added MUPSs for one substitution"),
        ("after", cmd_after, "MUPS set of the edited string"),
    ):
        sp = sub.add_parser(name, help=help_)
        add_input(sp)
        sp.add_argument("--pos", type=int, help="1-based position to substitute")
        sp.add_argument("--to", help="replacement character")
        sp.set_defaults(fn=fn)

    sp = sub.add_parser("verify", help="differential test against the brute-force oracle")
    sp.add_argument("--n", type=int, default=32)
    sp.add_argument("--sigma", type=int, default=2)
    sp.add_argument("--trials", type=int, default=20)
    sp.add_argument("--queries", type=int, default=0, help="sample this many queries per trial (0 = exhaustive)")
    sp.add_argument("--seed", type=int, default=1)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("bench", help="build/query timing and delta-size statistics")
    sp.add_argument("--n", type=int, default=100000)
    sp.add_argument("--sigma", type=int, default=2)
    sp.add_argument("--queries", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=1)
    sp.add_argument("--figdir", help="also render figures and a per-query TSV here")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=cmd_bench)

    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.fn(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except IOError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
