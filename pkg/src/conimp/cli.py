"""Command-line interface.

Subcommands::

    conimp entail RULES_FILE            decide the '?' query of RULES_FILE
    conimp witness RULES_FILE --out P   same, writing the counter-model to P
    conimp check CXT_FILE RULES_FILE    evaluate every rule on a context
    conimp mine CXT_FILE --min-support S --min-confidence C

Exit codes: 0 entailed / all rules hold / success, 1 not entailed / some
rule fails, 2 on any usage, parse or I/O error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from conimp.context import ContextError, FormalContext, confidence, support
from conimp.cxt import parse_cxt, serialize_cxt
from conimp.entail import Verdict, decide_entailment
from conimp.lp import DEFAULT_MAX_MATERIALIZE, ImplicitSystem, LPError, densify
from conimp.numeric import format_decimal, format_rational, parse_rational
from conimp.rules import (
    ConstrainedImplication,
    RuleError,
    attribute_universe,
    mine_rules,
    parse_rule_file,
    serialize_rules,
)
from conimp.simplex import DEFAULT_MAX_ITERATIONS, SimplexError

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_ERROR = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _rational_arg(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative: {text!r}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="conimp", description=__doc__.split("\n\n")[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-iterations", type=_positive_int, default=DEFAULT_MAX_ITERATIONS,
                        help="simplex pivot cap (safety valve)")
    common.add_argument("--max-materialize", type=_positive_int, default=DEFAULT_MAX_MATERIALIZE,
                        help="largest universe the debug matrix dump may materialize")
    common.add_argument("--trace", action="store_true",
                        help="print one line per simplex pivot on stderr")
    common.add_argument("--decimal", action="store_true",
                        help="append decimal approximations to exact values")
    common.add_argument("--out", type=Path, help="output path")

    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("entail", parents=[common], help="decide the query of a rule file")
    p.add_argument("rules_file", type=Path)
    p.add_argument("--dump-matrix", type=Path, metavar="PATH",
                   help="write the densified system as TSV (debug)")

    p = sub.add_parser("witness", parents=[common], help="write a counter-model for the query")
    p.add_argument("rules_file", type=Path)

    p = sub.add_parser("check", parents=[common], help="evaluate rules on a context")
    p.add_argument("cxt_file", type=Path)
    p.add_argument("rules_file", type=Path)

    p = sub.add_parser("mine", parents=[common], help="list all rules of a context")
    p.add_argument("cxt_file", type=Path)
    p.add_argument("--min-support", type=_rational_arg, required=True)
    p.add_argument("--min-confidence", type=_rational_arg, required=True)
    return parser


def _read(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from None


def _write(path: Path, text: str) -> None:
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror or exc}") from None


def _fmt(q: Fraction, decimal: bool) -> str:
    text = format_rational(q)
    if decimal and q.denominator != 1:
        text += f" (~{format_decimal(q)})"
    return text


def format_report(verdict: Verdict, query: ConstrainedImplication, decimal: bool = False) -> str:
    """``key: value`` report of a verdict; byte-identical for identical input."""
    if verdict.entailed:
        label = "ENTAILED"
    else:
        label = f"NOT ENTAILED ({verdict.failing_program})"
    lines = [
        f"query: {query}",
        f"verdict: {label}",
        f"min_support: {_fmt(verdict.min_support_value, decimal)}",
        f"min_surrogate: {_fmt(verdict.min_surrogate_value, decimal)}",
        f"threshold_support: {_fmt(query.support, decimal)}",
        f"threshold_confidence: {_fmt(query.confidence, decimal)}",
        f"failing_program: {verdict.failing_program or 'none'}",
        f"witness_objects: {len(verdict.witness.objects) if verdict.witness else 'none'}",
    ]
    return "\n".join(lines) + "\n"


def _load_instance(path: Path):
    rules, query = parse_rule_file(_read(path))
    if query is None:
        raise UsageError(f"{path}: no query line (starting with '?')")
    return rules, query


def _trace_fn(args):
    if not args.trace:
        return None
    return lambda line: print(line, file=sys.stderr)


def _decide(args) -> tuple[Verdict, ConstrainedImplication, str]:
    rules, query = _load_instance(args.rules_file)
    verdict = decide_entailment(
        rules, query, max_iterations=args.max_iterations, trace=_trace_fn(args)
    )
    return verdict, query, format_report(verdict, query, args.decimal)


def _witness_path(args) -> Path:
    base = args.out if args.out is not None else args.rules_file
    return base.with_name(base.stem + ".witness.cxt")


def cmd_entail(args) -> int:
    if args.dump_matrix is not None:
        rules, query = _load_instance(args.rules_file)
        sys_ = ImplicitSystem(attribute_universe(rules, query), rules)
        _write(args.dump_matrix, densify(sys_, args.max_materialize).to_tsv())
    verdict, query, report = _decide(args)
    if verdict.witness is not None:
        path = _witness_path(args)
        _write(path, serialize_cxt(verdict.witness))
        report += f"witness_file: {path}\n"
    if args.out is not None:
        _write(args.out, report)
    sys.stdout.write(report)
    return EXIT_OK if verdict.entailed else EXIT_FAIL


def cmd_witness(args) -> int:
    if args.out is None:
        raise UsageError("witness needs --out PATH")
    verdict, query, report = _decide(args)
    if verdict.witness is not None:
        _write(args.out, serialize_cxt(verdict.witness))
        report += f"witness_file: {args.out}\n"
    sys.stdout.write(report)
    return EXIT_OK if verdict.entailed else EXIT_FAIL


def _check_line(K: FormalContext, r: ConstrainedImplication, decimal: bool) -> tuple[bool, str]:
    supp = support(K, r.premise)
    conf = confidence(K, r.premise, r.conclusion)
    supp_ok = supp >= r.support
    conf_ok = conf >= r.confidence
    parts = [
        f"supp = {_fmt(supp, decimal)} {'>=' if supp_ok else '<'} {_fmt(r.support, decimal)}",
        f"conf = {_fmt(conf, decimal)} {'>=' if conf_ok else '<'} {_fmt(r.confidence, decimal)}",
    ]
    ok = supp_ok and conf_ok
    return ok, f"{r}: {', '.join(parts)}: {'holds' if ok else 'FAILS'}"


def cmd_check(args) -> int:
    K = parse_cxt(_read(args.cxt_file))
    rules, query = parse_rule_file(_read(args.rules_file))
    checked = [*rules, *([query] if query is not None else [])]
    all_ok = True
    lines = []
    for r in checked:
        ok, line = _check_line(K, r, args.decimal)
        all_ok &= ok
        lines.append(("? " if r is query else "") + line)
    lines.append(f"result: {'MODEL' if all_ok else 'NOT A MODEL'}")
    report = "\n".join(lines) + "\n"
    if args.out is not None:
        _write(args.out, report)
    sys.stdout.write(report)
    return EXIT_OK if all_ok else EXIT_FAIL


def cmd_mine(args) -> int:
    K = parse_cxt(_read(args.cxt_file))
    text = serialize_rules(mine_rules(K, args.min_support, args.min_confidence))
    if args.out is not None:
        _write(args.out, text)
    sys.stdout.write(text)
    return EXIT_OK


COMMANDS = {"entail": cmd_entail, "witness": cmd_witness, "check": cmd_check, "mine": cmd_mine}


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code in (0, EXIT_ERROR) else EXIT_ERROR
    try:
        return COMMANDS[args.command](args)
    except (UsageError, RuleError, ContextError, LPError, SimplexError, ValueError) as exc:
        print(f"conimp: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
