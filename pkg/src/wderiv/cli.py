"""Command-line front end: ``wderiv eval``, ``wderiv table`` and ``wderiv verify``.

Exit codes: 0 success, 1 a verification check failed, 2 domain error,
3 convergence failure, 64 usage error, 74 output file error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from . import derivs, tables, verify
from ._common import parse_number
from .errors import DomainError, EvalFailure, EvalOverflow, NonConvergence, WderivError
from .whittaker import whittaker_m, whittaker_w, wi_lower, wi_upper

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_DOMAIN = 2
EXIT_CONVERGENCE = 3
EXIT_USAGE = 64
EXIT_IO = 74

EVAL_FIELDS = ("function", "kappa", "mu", "x", "wrt", "value", "err_estimate", "method", "imag_residual", "flags")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _number(text: str) -> float:
    try:
        return parse_number(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a number or p/q rational: {text!r}") from exc


def _x_list(text: str) -> list[float]:
    return [_number(t) for t in text.replace(";", ",").split(",") if t.strip()]


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="wderiv", description="Whittaker functions and their parameter derivatives.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("eval", help="evaluate one function at one point")
    e.add_argument("--fn", required=True, choices=["W", "M", "Wi", "wi", "dW"])
    e.add_argument("--kappa", required=True, type=_number)
    e.add_argument("--mu", required=True, type=_number)
    e.add_argument("--x", required=True, type=_number)
    e.add_argument("--wrt", choices=["kappa", "mu"], help="parameter for --fn dW")
    e.add_argument("--method", default=None,
                   help="W: auto|combination|tricomi|quadrature; dW: auto|closed_form|series|integral_rep|finite_difference")
    e.add_argument("--format", default="plain", choices=["json", "csv", "plain"])

    t = sub.add_parser("table", help="regenerate a table of closed forms with FD residuals")
    t.add_argument("table_id", choices=list(tables.TABLE_IDS))
    t.add_argument("--x", type=_x_list, default=[0.5, 1.0, 2.0, 4.0, 8.0], help="comma-separated x values")
    t.add_argument("--format", default="csv", choices=["json", "csv", "plain"])
    t.add_argument("--out", default=None, help="output file (default: stdout)")

    v = sub.add_parser("verify", help="run verification suites and print a JSON report")
    v.add_argument("--suite", default="all", choices=list(verify.PUBLIC_SUITES))
    v.add_argument("--tol", type=float, default=None, help="override every tolerance in the suite")
    return p


# ---------------------------------------------------------------------------


def _evaluate(args) -> dict:
    k, m, x = args.kappa, args.mu, args.x
    fn = args.fn
    if fn != "dW" and args.wrt is not None:
        raise _UsageError("--wrt only applies to --fn dW")
    if fn == "dW":
        if args.wrt is None:
            raise _UsageError("--fn dW needs --wrt kappa|mu")
        r = derivs.dW(k, m, x, args.wrt, args.method or "auto")
        value, err, method, imag, flags = r.value, r.err_estimate, f"{r.case_used.value}:{r.method}", r.imag_residual, r.flags
    else:
        if fn == "W":
            r = whittaker_w(k, m, x, method=args.method or "auto")
        else:
            if args.method not in (None, "auto"):
                raise _UsageError(f"--method is not available for --fn {fn}")
            r = {"M": whittaker_m, "Wi": wi_lower, "wi": wi_upper}[fn](k, m, x)
        value, err, method, imag, flags = r.value, r.abs_err, r.method, r.imag_residual, r.flags
    if not math.isfinite(value):
        raise EvalOverflow("result is not finite")
    return {"function": fn, "kappa": k, "mu": m, "x": x, "wrt": args.wrt or "", "value": value,
            "err_estimate": err, "method": method, "imag_residual": imag, "flags": ";".join(flags)}


def _csv_text(fields, rows) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(fields), lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({f: (repr(r[f]) if isinstance(r[f], float) else r[f]) for f in fields})
    return buf.getvalue()


def _plain_text(fields, rows) -> str:
    lines = []
    for r in rows:
        lines.append("  ".join(f"{f}={r[f]!r}" if isinstance(r[f], float) else f"{f}={r[f]}" for f in fields))
    return "\n".join(lines) + "\n"


def _render(fields, rows, fmt: str, single: bool = False) -> str:
    if fmt == "json":
        return json.dumps(rows[0] if single else rows, indent=2) + "\n"
    if fmt == "csv":
        return _csv_text(fields, rows)
    return _plain_text(fields, rows)


def read_table_csv(text: str) -> list[tables.TableRowRecord]:
    """Parse the CSV written by ``wderiv table`` back into records."""
    return [tables.TableRowRecord.from_dict(d) for d in csv.DictReader(io.StringIO(text))]


def read_table_json(text: str) -> list[tables.TableRowRecord]:
    return [tables.TableRowRecord.from_dict(d) for d in json.loads(text)]


def cmd_eval(args, out) -> int:
    row = _evaluate(args)
    out.write(_render(EVAL_FIELDS, [row], args.format, single=True))
    return EXIT_OK


def cmd_table(args, out) -> int:
    records = tables.evaluate_table(args.table_id, args.x)
    rows = [r.to_dict() for r in records]
    text = _render(tables.TableRowRecord.FIELDS, rows, args.format)
    if args.out is None:
        out.write(text)
        return EXIT_OK
    try:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        sys.stderr.write(f"wderiv: cannot write {args.out}: {exc}\n")
        return EXIT_IO
    return EXIT_OK


def cmd_verify(args, out) -> int:
    names = list(verify.SUITES) if args.suite == "all" else [args.suite]
    reports = [verify.run_suite(n, args.tol) for n in names]
    total = sum(r.total for r in reports)
    passed = sum(r.passed for r in reports)
    doc = {"suite": args.suite, "total": total, "passed": passed,
           "suites": [r.to_dict() for r in reports]}
    out.write(json.dumps(_finite(doc), indent=2, allow_nan=False) + "\n")
    return EXIT_OK if passed == total else EXIT_VERIFY_FAILED


def _finite(o):
    """Strict JSON has no inf/nan; those become the strings "inf", "-inf", "nan"."""
    if isinstance(o, float) and not math.isfinite(o):
        return repr(o)
    if isinstance(o, dict):
        return {k: _finite(v) for k, v in o.items()}
    if isinstance(o, (list, tuple)):
        return [_finite(v) for v in o]
    return o


def main(argv: list[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
        handler = {"eval": cmd_eval, "table": cmd_table, "verify": cmd_verify}[args.command]
        return handler(args, out)
    except _UsageError as exc:
        sys.stderr.write(f"wderiv: usage error: {exc}\n")
        return EXIT_USAGE
    except (NonConvergence, EvalFailure, EvalOverflow) as exc:
        sys.stderr.write(f"wderiv: convergence failure: {exc}\n")
        return EXIT_CONVERGENCE
    except (DomainError, WderivError, ValueError) as exc:
        sys.stderr.write(f"wderiv: domain error: {exc}\n")
        return EXIT_DOMAIN


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
