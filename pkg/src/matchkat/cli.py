"""Command-line front end: ``matchkat <command> ...``.

Each command reads its inputs from files (``-`` for stdin), calls the
library function of the same name and prints line-oriented text.

Exit status: 0 equivalent/accept/success, 1 differ/reject/failed check,
2 usage or parse error, 3 capacity error.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import checks, syntax
from . import match as mx
from . import netkat as nk
from . import terms as mk
from .encoders import compile_counter, compile_priority
from .errors import CapacityError, MatchKATError
from .lba import decide_word

EXIT_OK, EXIT_DIFFER, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _packets_arg(value: str, width: int):
    # a CSV list inline, or a file / '-' holding one
    if value == "-" or os.path.isfile(value):
        value = _read(value)
    return syntax.parse_packets(value, width)


def _print_sets(left, right) -> None:
    # braces so that an empty output set stays visible
    print(f"left: {left}")
    print(f"right: {right}")


def cmd_eval(args) -> int:
    term = syntax.parse_term(_read(args.term), args.width)
    out = mk.evaluate(term, _packets_arg(args.packets, args.width))
    for p in out:
        print(p)
    return EXIT_OK


def cmd_equiv(args) -> int:
    t = syntax.parse_term(_read(args.a), args.width)
    u = syntax.parse_term(_read(args.b), args.width)
    result = mk.term_equiv(t, u, args.width)
    if result:
        print("equivalent")
        return EXIT_OK
    print("differ")
    print(f"witness: {result.witness}")
    _print_sets(result.left, result.right)
    return EXIT_DIFFER


def cmd_match_equiv(args) -> int:
    e = syntax.parse_match_expr(_read(args.a), args.width)
    f = syntax.parse_match_expr(_read(args.b), args.width)
    result = mx.expr_equiv(e, f)
    if result:
        print("equivalent")
        return EXIT_OK
    print("differ")
    print(f"witness: {result.witness}")
    side = "left" if mx.matches(e, result.witness) else "right"
    print(f"matched by: {side}")
    return EXIT_DIFFER


def cmd_dnf(args) -> int:
    e = syntax.parse_match_expr(_read(args.file), args.width)
    cubes = sorted(mx.to_dnf(e), key=lambda c: c.trits)
    if not cubes:
        print(f"bot({e.width})")
    for c in cubes:
        print(c.trits)
    return EXIT_OK


def cmd_to_netkat(args) -> int:
    t = syntax.parse_term(_read(args.file), args.width)
    print(syntax.pretty_netkat_program(nk.FieldSpec.bits(args.width), nk.to_netkat(t, args.width)))
    return EXIT_OK


def cmd_from_netkat(args) -> int:
    fields = syntax.parse_field_spec(args.fields) if args.fields else None
    spec, t = syntax.parse_netkat(_read(args.file), fields)
    print(syntax.pretty_term(nk.from_netkat(t, spec)))
    return EXIT_OK


def cmd_compile_table(args) -> int:
    tbl = syntax.parse_table(_read(args.file))
    if args.mode == "priority":
        print(syntax.pretty_term(compile_priority(tbl)))
        return EXIT_OK
    term, layout = compile_counter(tbl, args.counter_variant)
    lo, hi = layout.counter_range
    print(f"# width {layout.width}, counter bits {lo}..{hi}")
    print(syntax.pretty_term(term))
    return EXIT_OK


def cmd_lba(args) -> int:
    machine = syntax.parse_lba(_read(args.machine))
    verdict = decide_word(machine, args.word)
    print(verdict)
    return EXIT_OK if verdict.value == "accept" else EXIT_DIFFER


def cmd_check(args) -> int:
    report = checks.SUITES[args.suite](args.seed, args.cases)
    print(report)
    for failure in report.failures[: args.show]:
        print(f"  {failure}")
    return EXIT_OK if report.ok else EXIT_DIFFER


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="matchkat", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="apply a term to a set of packets")
    p.add_argument("--width", type=int, required=True)
    p.add_argument("--term", required=True, help="term file or -")
    p.add_argument("--packets", required=True, help="comma-separated packets, or a file holding them")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("equiv", help="decide equivalence of two terms")
    p.add_argument("--width", type=int, required=True)
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("match-equiv", help="decide equivalence of two match expressions")
    p.add_argument("--width", type=int, required=True)
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_match_equiv)

    p = sub.add_parser("dnf", help="print the cubes of a match expression")
    p.add_argument("--width", type=int, required=True)
    p.add_argument("file")
    p.set_defaults(func=cmd_dnf)

    p = sub.add_parser("to-netkat", help="translate a term into NetKAT")
    p.add_argument("--width", type=int, required=True)
    p.add_argument("file")
    p.set_defaults(func=cmd_to_netkat)

    p = sub.add_parser("from-netkat", help="translate NetKAT into a term")
    p.add_argument("--fields", help="field declaration, e.g. 'f1:3, f2:1'")
    p.add_argument("file")
    p.set_defaults(func=cmd_from_netkat)

    p = sub.add_parser("compile-table", help="compile a match-action table")
    p.add_argument("file")
    p.add_argument("--mode", choices=("priority", "counter"), default="priority")
    p.add_argument("--counter-variant", choices=("paper", "fixed"), default="fixed")
    p.set_defaults(func=cmd_compile_table)

    p = sub.add_parser("lba", help="decide an LBA word problem through its term encoding")
    p.add_argument("--machine", required=True)
    p.add_argument("--word", required=True, help="binary input word (may be empty)")
    p.set_defaults(func=cmd_lba)

    p = sub.add_parser("check", help="run a property suite")
    p.add_argument("--suite", choices=sorted(checks.SUITES), required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=None,
                   help="case count (suite default when omitted; ignored by exhaustive suites)")
    p.add_argument("--show", type=int, default=5, help="failures to print")
    p.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"matchkat: capacity: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (MatchKATError, ValueError, OSError) as exc:
        print(f"matchkat: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
