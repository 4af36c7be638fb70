"""Command-line front end.

Exit codes: 0 success, 1 property violation or comparison mismatch,
2 usage error, 3 resource ceiling hit.
"""

from __future__ import annotations

import argparse
import contextlib
import sys

from primender import analysis, io_export, scoring
from primender.errors import DomainError, PropertyViolation, ResourceError
from primender.primality import is_prime
from primender.sequence import GeneratorConfig, index_of, iter_blocks, nth_term, shortest_prime_suffix

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3

DEFAULT_VERIFY_COUNT = 100_000
EXTENDED_VERIFY_COUNT = 1_000_000

PROPERTY_FLAGS = {
    "h1": analysis.PropertyId.H1,
    "max-delta": analysis.PropertyId.MAX_DELTA,
    "delta4": analysis.PropertyId.DELTA4_ENDS_1,
    "pelp7": analysis.PropertyId.PELP_NO_7,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


@contextlib.contextmanager
def _output(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            yield fh


def cmd_check(args):
    found = shortest_prime_suffix(args.n)
    if found is None:
        print(f"{args.n}: not a member (no prime suffix)")
    else:
        print(f"{args.n}: member, shortest prime suffix (k={found[0]}, value={found[1]})")
    return EXIT_OK


def cmd_explain(args):
    n = args.n
    cmd_check(args)
    k, p10 = 1, 10
    while True:
        m = n % p10
        print(f"  k={k}: {n} mod {p10} = {m} -> {'prime' if is_prime(m) else 'not prime'}")
        if p10 > n:
            break
        k += 1
        p10 *= 10
    idx = index_of(n)
    if idx is not None:
        print(f"  index (0-based): {idx}")
    return EXIT_OK


def cmd_nth(args):
    t = nth_term(args.index)
    delta = "" if t.delta is None else t.delta
    print(f"index (0-based)={t.index} value={t.value} is_prime={int(t.is_full_prime)} "
          f"lp={t.lp} pe_minus_lp={t.pe_minus_lp} delta={delta}")
    return EXIT_OK


def cmd_index(args):
    idx = index_of(args.n)
    print(f"{args.n}: not a member" if idx is None else f"{args.n}: index (0-based) {idx}")
    return EXIT_OK


def cmd_generate(args):
    config = GeneratorConfig(count=args.count, limit=args.limit, start=args.start)
    with _output(args.output) as out:
        if args.format == "csv":
            out.write(io_export.DATASET_HEADER + "\n")
        for block in iter_blocks(config):
            for t in block.terms():
                if args.format == "list":
                    out.write(f"{t.value}\n")
                elif args.format == "bfile":
                    out.write(f"{t.index + 1} {t.value}\n")
                else:
                    delta = "" if t.delta is None else t.delta
                    out.write(f"{t.index},{t.value},{int(t.is_full_prime)},{t.lp},{t.pe_minus_lp},{delta}\n")
    return EXIT_OK


def cmd_stats(args):
    count, density = analysis.density_stats(args.limit)
    print(f"limit={args.limit} members={count} density={density:.6f}")
    return EXIT_OK


def cmd_histogram(args):
    hist = analysis.delta_histogram(args.count)
    print("delta,count")
    for d, c in hist.counts.items():
        print(f"{d},{c}")
    print(f"# total={hist.total} max_observed={hist.max_observed}")
    return EXIT_OK


def cmd_verify(args):
    count = args.count or (EXTENDED_VERIFY_COUNT if args.extended else DEFAULT_VERIFY_COUNT)
    flags = list(PROPERTY_FLAGS) if "all" in args.property else args.property
    ids = list(dict.fromkeys(PROPERTY_FLAGS[f] for f in flags))
    reports = analysis.verify(ids, count, args.max_violations)
    for r in reports:
        print(r.summary())
        for t in r.violations:
            print(f"  counterexample: {t}")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def _emit_report(report, args):
    print(report.render(details=args.details), end="")
    if args.json:
        print(report.to_record())
    return EXIT_FAIL if report.error_percent > args.threshold else EXIT_OK


def cmd_compare(args):
    expected = scoring.read_number_file(args.expected)
    tested = scoring.read_number_file(args.tested)
    return _emit_report(scoring.compare_multisets(expected, tested), args)


def cmd_score(args):
    submission = scoring.read_number_file(args.submission)
    offset = 0 if args.from_start else scoring.PROMPT_TERMS
    return _emit_report(scoring.score_continuation(submission, args.continuation_count, offset), args)


def cmd_export(args):
    with _output(args.output) as out:
        io_export.export(args.kind, args.count, out)
    return EXIT_OK


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"{text} is not a positive integer")
    return value


def _nonnegative(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"{text} is negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="primender", description="Primender sequence toolkit (indices are 0-based).")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, fn, help_ in (("check", cmd_check, "membership and shortest prime suffix"),
                            ("explain", cmd_explain, "show every suffix test and the index")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("n", type=_positive)
        p.set_defaults(func=fn)

    p = sub.add_parser("nth", help="term at a 0-based index")
    p.add_argument("index", type=_nonnegative)
    p.set_defaults(func=cmd_nth)

    p = sub.add_parser("index", help="0-based index of a member")
    p.add_argument("n", type=_positive)
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("generate", help="stream terms")
    bound = p.add_mutually_exclusive_group(required=True)
    bound.add_argument("--count", type=_positive)
    bound.add_argument("--limit", type=_positive)
    p.add_argument("--start", type=_positive, default=1)
    p.add_argument("--format", choices=("list", "csv", "bfile"), default="list")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("stats", help="member count and density up to a limit")
    p.add_argument("--limit", type=_positive, required=True)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("histogram", help="delta frequencies over the first N terms")
    p.add_argument("--count", type=_positive, default=10_000)
    p.set_defaults(func=cmd_histogram)

    p = sub.add_parser("verify", help="check structural properties")
    p.add_argument("--property", nargs="+", choices=(*PROPERTY_FLAGS, "all"), default=["all"])
    depth = p.add_mutually_exclusive_group()
    depth.add_argument("--count", type=_positive)
    depth.add_argument("--extended", action="store_true", help=f"check {EXTENDED_VERIFY_COUNT:,} terms")
    p.add_argument("--max-violations", type=_positive, default=analysis.DEFAULT_MAX_VIOLATIONS)
    p.set_defaults(func=cmd_verify)

    for name, fn in (("compare", cmd_compare), ("score", cmd_score)):
        p = sub.add_parser(name, help="order-insensitive comparison" if name == "compare" else "grade a continuation")
        if name == "compare":
            p.add_argument("expected")
            p.add_argument("tested")
        else:
            p.add_argument("submission")
            p.add_argument("--continuation-count", type=_positive, default=scoring.DEFAULT_CONTINUATION)
            p.add_argument("--from-start", action="store_true", help="grade from index 0 instead of after the first 100")
        p.add_argument("--threshold", type=float, default=0.0, help="max error percent for exit 0")
        p.add_argument("--details", action="store_true", help="list missing and extra values")
        p.add_argument("--json", action="store_true", help="also print a one-line JSON record")
        p.set_defaults(func=fn)

    p = sub.add_parser("export", help="write a data file")
    p.add_argument("kind", choices=[k.value for k in io_export.ExportKind])
    p.add_argument("--count", type=_positive, default=10_000)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_export)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return args.func(args)
    except ResourceError as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except MemoryError:
        print("resource error: out of memory", file=sys.stderr)
        return EXIT_RESOURCE
    except (DomainError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PropertyViolation as exc:
        print(f"violation: {exc}", file=sys.stderr)
        return EXIT_FAIL


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
