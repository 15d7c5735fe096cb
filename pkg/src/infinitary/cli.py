"""Command line entry point: ``infinitary {sigma,divisors,search,lemmas}``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys

from . import __version__
from .arith import ValueDomainError, factorize
from .divisors import INFINITARY, DivisorKind, divisors, infinitary_terms, sigma_prime_power
from .lemmas import DEFAULTS, LEMMA_IDS, run_lemma
from .search import SearchConfig, search_multiples

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_OVERFLOW = 3
EXIT_VIOLATION = 4

CSV_FIELDS = ("n", "k", "factorization", "sigma_inner", "sigma_outer")


class InputError(ValueError):
    pass


def parse_int_expr(text: str) -> int:
    """Integers like ``268435456``, ``2^28``, ``2**28``, ``10^6`` or ``3*2^20``."""
    s = text.strip().replace("**", "^").replace("_", "")
    if not re.fullmatch(r"\d+(\^\d+)?(\*\d+(\^\d+)?)*", s):
        raise argparse.ArgumentTypeError(f"not an integer expression: {text!r}")
    value = 1
    for term in s.split("*"):
        base, _, exp = term.partition("^")
        value *= int(base) ** int(exp or 1)
    return value


def _kind(text: str) -> DivisorKind:
    try:
        return DivisorKind.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> int:
    value = parse_int_expr(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="infinitary", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sigma", help="divisor sum of one integer")
    p.add_argument("--kind", type=_kind, default=INFINITARY)
    p.add_argument("n", type=_positive)
    p.add_argument("-v", "--verbose", action="store_true", help="print per prime power factors")

    p = sub.add_parser("divisors", help="list divisors of one kind")
    p.add_argument("--kind", type=_kind, default=INFINITARY)
    p.add_argument("n", type=_positive)

    p = sub.add_parser("search", help="all n <= limit dividing outer(inner(n))")
    p.add_argument("--limit", type=_positive, required=True)
    p.add_argument("--inner", type=_kind, default=INFINITARY)
    p.add_argument("--outer", type=_kind, default=INFINITARY)
    p.add_argument("--k", type=_positive, default=None, dest="k_filter")
    p.add_argument("--threads", type=_positive, default=os.cpu_count() or 1)
    p.add_argument("--segment-size", type=_positive, default=None)
    p.add_argument("--format", choices=("table", "csv", "jsonl"), default="table")
    p.add_argument("--out", default=None, help="write results here instead of stdout")
    p.add_argument("--progress", action="store_true", help="segment progress on stderr")

    p = sub.add_parser("lemmas", help="brute-force lemma verification")
    p.add_argument("--lemma", action="append", choices=LEMMA_IDS, type=str.upper,
                   help="repeatable; default runs all")
    p.add_argument("--bound", type=_positive, default=None, help="override the primary bound")
    for name in ("p_max", "e_max", "l_max", "q_max", "k_max", "m_max"):
        p.add_argument("--" + name.replace("_", "-"), type=_positive, default=None,
                       help=f"default {DEFAULTS[name]}")
    p.add_argument("--threads", type=_positive, default=1)
    p.add_argument("--format", choices=("table", "jsonl"), default="table")
    p.add_argument("--timing", action="store_true", help="include elapsed times")
    p.add_argument("--full", action="store_true", help="list every witness in table output")
    return parser


def _cmd_sigma(args, out) -> int:
    f = factorize(args.n)
    total = 1
    for p, e in f:
        s = sigma_prime_power(args.kind, p, e)
        if args.verbose:
            detail = ""
            if args.kind == INFINITARY and e:
                detail = " = " + " * ".join(f"(1+{p}^{1 << j})" for j in range(e.bit_length()) if e >> j & 1)
                detail += " = " + " * ".join(map(str, infinitary_terms(p, e)))
            print(f"{p}^{e}: {s}{detail}", file=out)
        total *= s
    if total >= 1 << 64:
        raise ValueDomainError(f"sigma({args.n}) exceeds the 64-bit value domain")
    print(total, file=out)
    return EXIT_OK


def _cmd_divisors(args, out) -> int:
    print(" ".join(map(str, divisors(args.kind, args.n))), file=out)
    return EXIT_OK


def format_hits(hits, fmt: str) -> str:
    rows = [h.as_row() for h in hits]
    buf = io.StringIO()
    if fmt == "csv":
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_FIELDS)
        w.writerows(rows)
    elif fmt == "jsonl":
        for r in rows:
            buf.write(json.dumps(dict(zip(CSV_FIELDS, r)), separators=(",", ":")) + "\n")
    else:
        cells = [CSV_FIELDS] + [tuple(map(str, r)) for r in rows]
        widths = [max(len(c[i]) for c in cells) for i in range(len(CSV_FIELDS))]
        for c in cells:
            buf.write("  ".join(x.rjust(w) if i != 2 else x.ljust(w)
                                for i, (x, w) in enumerate(zip(c, widths))).rstrip() + "\n")
    return buf.getvalue()


def _cmd_search(args, out) -> int:
    try:
        cfg = SearchConfig(args.limit, args.inner, args.outer, segment_size=args.segment_size,
                           worker_count=args.threads, k_filter=args.k_filter)
    except ValueError as exc:
        raise InputError(str(exc)) from None

    def progress(done, total):
        print(f"\rsegments {done}/{total}", end="" if done < total else "\n", file=sys.stderr)

    hits = search_multiples(cfg, progress if args.progress else None)
    text = format_hits(hits, args.format)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK


def _cmd_lemmas(args, out) -> int:
    bounds = {k: getattr(args, k) for k in ("p_max", "e_max", "l_max", "q_max", "k_max", "m_max")}
    failed = False
    for lemma_id in args.lemma or LEMMA_IDS:
        for report in run_lemma(lemma_id, args.bound, workers=args.threads, **bounds):
            failed |= not report.passed
            if args.format == "jsonl":
                out.write(json.dumps(report.to_dict(args.timing), separators=(",", ":")) + "\n")
                continue
            status = "PASS" if report.passed else "FAIL"
            line = f"{report.lemma_id}  {status}  {report.range_description}  " \
                   f"witnesses={len(report.witnesses)}  violations={len(report.violations)}"
            if args.timing:
                line += f"  elapsed={report.elapsed:.2f}s"
            print(line, file=out)
            shown = report.witnesses if args.full else report.witnesses[:10]
            for w in shown:
                print(f"    witness {w}", file=out)
            if len(shown) < len(report.witnesses):
                print(f"    ... {len(report.witnesses) - len(shown)} more", file=out)
            for v in report.violations:
                print(f"    VIOLATION {v}", file=out)
            for key, value in report.notes.items():
                print(f"    {key}: {value}", file=out)
    return EXIT_VIOLATION if failed else EXIT_OK


COMMANDS = {"sigma": _cmd_sigma, "divisors": _cmd_divisors,
            "search": _cmd_search, "lemmas": _cmd_lemmas}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args, out)
    except ValueDomainError as exc:
        print(f"error: overflow: {exc}", file=sys.stderr)
        return EXIT_OVERFLOW
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
