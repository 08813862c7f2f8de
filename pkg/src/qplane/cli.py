"""``qplane`` command-line front end.

Exit status: 0 on success (and every identity holding), 1 if some identity
fails, 2 on usage, parse or evaluation errors.
"""

from __future__ import annotations

import argparse
import contextlib
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

from .identities import IdentityId, IdentityReport, acceptance_config, run_check, run_suite
from .parser import ParseError, elaborate, parse
from .ring import PoleError

__all__ = ["CommandResult", "cmd_dispatch", "main", "MAX_NUMERIC", "DEFAULT_ORDER"]

MAX_NUMERIC = 64
DEFAULT_ORDER = 6

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

_CHECK_NAMES = {
    "direct": IdentityId.DIRECT,
    "reversed": IdentityId.REVERSED,
    "intermediate": IdentityId.INTERMEDIATE,
    "qbinom": IdentityId.QBINOM,
    "xpower": IdentityId.XPOWER,
    "coeff5": IdentityId.COEFF5,
    "classical": IdentityId.CLASSICAL_LIMIT,
}


@dataclass
class CommandResult:
    status: int
    stdout: str = ""
    stderr: str = ""


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.format_usage()}{self.prog}: error: {message}\n")


def _bounded(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if not 0 <= value <= MAX_NUMERIC:
        raise argparse.ArgumentTypeError(f"must be between 0 and {MAX_NUMERIC}, got {value}")
    return value


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational like 3/2, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qplane", description="Exact computations in the quantum plane xy = q^-1 yx.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    fmt = dict(choices=("text", "json"), default="text", help="output format (default: text)")

    p = sub.add_parser("normalize", help="expand and normal-order an expression")
    p.add_argument("expr")
    p.add_argument("--order", type=_bounded, default=DEFAULT_ORDER,
                   help=f"truncation order (default {DEFAULT_ORDER}, max {MAX_NUMERIC})")
    p.add_argument("--format", **fmt)

    p = sub.add_parser("check", help="check one identity")
    p.add_argument("identity", choices=sorted(_CHECK_NAMES))
    p.add_argument("--order", type=_bounded, help=f"truncation order (default {DEFAULT_ORDER})")
    p.add_argument("--n", type=_bounded, help="n for xpower and coeff5")
    p.add_argument("--m", type=_bounded, help="m for coeff5")
    p.add_argument("--format", **fmt)

    p = sub.add_parser("suite", help="run the full identity battery")
    p.add_argument("--max-order", type=_bounded, default=10, help="largest truncation order (default 10)")
    p.add_argument("--max-mn", type=_bounded, default=15, help="largest m, n for coeff5 and qbinom (default 15)")
    p.add_argument("--format", **fmt)

    p = sub.add_parser("eval", help="evaluate coefficients at a rational q")
    p.add_argument("expr")
    p.add_argument("--q", type=_rational, required=True, help="value of q, e.g. 3/2")
    p.add_argument("--order", type=_bounded, default=DEFAULT_ORDER)
    p.add_argument("--format", **fmt)
    return parser


def _caret(source: str, err: ParseError) -> str:
    return f"error: {err}\n  {source}\n  {' ' * err.position}^\n"


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _report_line(report: IdentityReport) -> str:
    name = report.identity_id.value if report.identity_id else "?"
    params = ", ".join(str(p) for p in report.params)
    status = "holds" if report.holds else "FAILS"
    line = f"{name}({params}): {status}  [{report.elapsed * 1000:.1f} ms]"
    if report.error:
        line += f"\n  error: {report.error}"
    elif not report.holds:
        line += f"\n  discrepancy: {report.discrepancy}"
    return line


def _cmd_normalize(args) -> CommandResult:
    elem = elaborate(parse(args.expr), args.order)
    if args.format == "json":
        terms = [{"x": m, "y": n, "coeff": str(c)} for (m, n), c in elem.sorted_terms()]
        return CommandResult(EXIT_OK, _dump(
            {"expression": args.expr, "order": args.order, "result": str(elem), "terms": terms}))
    return CommandResult(EXIT_OK, str(elem) + "\n")


def _cmd_eval(args) -> CommandResult:
    elem = elaborate(parse(args.expr), args.order)
    values = elem.evaluate_coefficients(args.q)
    ordered = [(k, values[k]) for k, _ in elem.sorted_terms() if k in values]
    if args.format == "json":
        terms = [{"x": m, "y": n, "value": str(v)} for (m, n), v in ordered]
        return CommandResult(EXIT_OK, _dump(
            {"expression": args.expr, "order": args.order, "q": str(args.q), "terms": terms}))
    parts = []
    for (m, n), v in ordered:
        mono = "*".join(p for p in ("x" if m == 1 else f"x^{m}" if m else "",
                                    "y" if n == 1 else f"y^{n}" if n else "") if p)
        if not mono:
            parts.append(str(v))
        elif v == 1:
            parts.append(mono)
        else:
            parts.append(f"{v}*{mono}")
    return CommandResult(EXIT_OK, (" + ".join(parts) or "0") + "\n")


def _cmd_check(args) -> CommandResult:
    ident = _CHECK_NAMES[args.identity]
    if ident is IdentityId.XPOWER:
        if args.n is None:
            raise _UsageError("qplane check xpower: error: --n is required\n")
        if args.n < 1:
            raise _UsageError("qplane check xpower: error: --n must be at least 1\n")
        params = (args.n,)
    elif ident is IdentityId.COEFF5:
        if args.m is None or args.n is None:
            raise _UsageError("qplane check coeff5: error: --m and --n are required\n")
        params = (args.m, args.n)
    else:
        params = (DEFAULT_ORDER if args.order is None else args.order,)
    report = run_check(ident, params)
    status = EXIT_OK if report.holds else EXIT_FAILED
    if args.format == "json":
        return CommandResult(status, _dump(report.to_dict()))
    return CommandResult(status, _report_line(report) + "\n")


def _cmd_suite(args) -> CommandResult:
    config = acceptance_config(max_order=args.max_order, max_mn=args.max_mn)
    reports = run_suite(config)
    ok = all(r.holds for r in reports)
    status = EXIT_OK if ok else EXIT_FAILED
    failed = sum(not r.holds for r in reports)
    if args.format == "json":
        return CommandResult(status, _dump({
            "reports": [r.to_dict() for r in reports],
            "total": len(reports),
            "failed": failed,
            "all_hold": ok,
        }))
    lines = [_report_line(r) for r in reports]
    lines.append(f"{len(reports) - failed}/{len(reports)} checks hold")
    return CommandResult(status, "\n".join(lines) + "\n")


_COMMANDS = {
    "normalize": _cmd_normalize,
    "eval": _cmd_eval,
    "check": _cmd_check,
    "suite": _cmd_suite,
}


def cmd_dispatch(argv: Sequence[str]) -> CommandResult:
    """Run one command and capture its exit status and output."""
    parser = build_parser()
    out = io.StringIO()
    try:
        with contextlib.redirect_stdout(out):
            args = parser.parse_args(list(argv))
    except _UsageError as exc:
        return CommandResult(EXIT_USAGE, out.getvalue(), str(exc))
    except SystemExit as exc:  # --help
        return CommandResult(exc.code or 0, out.getvalue())
    try:
        return _COMMANDS[args.command](args)
    except ParseError as exc:
        return CommandResult(EXIT_USAGE, "", _caret(args.expr, exc))
    except _UsageError as exc:
        return CommandResult(EXIT_USAGE, "", parser.format_usage() + str(exc))
    except PoleError as exc:
        return CommandResult(EXIT_USAGE, "", f"error: {exc}\n")


def main(argv: Optional[List[str]] = None) -> int:
    result = cmd_dispatch(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(result.stdout)
    sys.stderr.write(result.stderr)
    return result.status


if __name__ == "__main__":
    sys.exit(main())
