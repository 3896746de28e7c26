"""Command-line front end.

Exit codes: 0 all pass, 1 some identity or property failed, 2 usage or parse
error, 3 evaluation error.  An evaluation error outranks a failure.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys
from typing import Sequence

from .errors import MockThetaError, ParseError
from .identity import CATALOG, Evaluator, ids, parse, to_text, verify_many
from .props import run_all

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_ERROR = 0, 1, 2, 3


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mocktheta", description="Exact q-series identity checker over Q(z3).")
    sub = p.add_subparsers(dest="command", required=True)

    ls = sub.add_parser("list", help="list catalog identities")
    ls.add_argument("--json", action="store_true")

    ver = sub.add_parser("verify", help="verify catalog identities")
    which = ver.add_mutually_exclusive_group(required=True)
    which.add_argument("--all", action="store_true", help="every catalog entry")
    which.add_argument("--id", dest="ids", action="extend", nargs="+", metavar="ID")
    ver.add_argument("--order", type=_positive, default=60)
    ver.add_argument("--jobs", type=_positive, default=1, help="worker threads")
    ver.add_argument("--json", action="store_true")
    ver.set_defaults(subparser=ver)

    ev = sub.add_parser("eval", help="evaluate an expression")
    ev.add_argument("expr")
    ev.add_argument("--order", type=_positive, default=60)
    ev.add_argument("--json", action="store_true")

    pr = sub.add_parser("props", help="run the randomized property suites")
    pr.add_argument("--cases", type=_positive, default=20)
    pr.add_argument("--order", type=_positive, default=60)
    pr.add_argument("--seed", type=int, default=0)
    pr.add_argument("--json", action="store_true")
    return p


def dump_json(obj) -> str:
    """The one serialization used for every JSON output (stable, no floats)."""
    return json.dumps(obj, indent=2)


def _exit_code(entries) -> int:
    statuses = {e["status"] for e in entries}
    if "error" in statuses:
        return EXIT_ERROR
    if "fail" in statuses:
        return EXIT_FAIL
    return EXIT_PASS


def _table(entries, out) -> None:
    width = max((len(e["id"]) for e in entries), default=2)
    for e in entries:
        detail = ""
        if e["mismatch"]:
            m = e["mismatch"]
            detail = f"first mismatch at q^{m['exponent']}: lhs {m['lhs']}, rhs {m['rhs']}"
        elif e["error_kind"]:
            detail = e["error_kind"]
            if e.get("message"):
                detail += f": {e['message']}"
        line = f"{e['id']:<{width}}  {e['status']:<5}  order {e['order']:<4}  {e['elapsed_ms']:>6} ms"
        print(f"{line}  {detail}".rstrip(), file=out)
    counted = [e for e in entries if e["status"] != "gap"]
    passed = sum(e["status"] == "pass" for e in counted)
    print(f"{passed}/{len(counted)} passed", file=out)


def cmd_list(args, out) -> int:
    rows = [
        {"id": r.id, "status": r.status, "default_order": r.default_order, "reference": r.reference}
        for r in (CATALOG[i] for i in ids())
    ]
    if args.json:
        print(dump_json(rows), file=out)
        return EXIT_PASS
    width = max(len(r["id"]) for r in rows)
    for r in rows:
        mark = "[gap]" if r["status"] == "gap" else ""
        print(f"{r['id']:<{width}}  {mark:<5}  {r['reference']}", file=out)
    return EXIT_PASS


def cmd_verify(args, out, parser) -> int:
    if args.all:
        chosen = ids()
    else:
        unknown = [i for i in args.ids if i not in CATALOG]
        if unknown:
            parser.error("unknown identity id: " + ", ".join(unknown))
        chosen = sorted(set(args.ids))
    reports = verify_many([CATALOG[i] for i in chosen], args.order, jobs=args.jobs)
    entries = [r.to_json() for r in reports]
    if args.json:
        print(dump_json(entries), file=out)
    else:
        for e, r in zip(entries, reports):
            e["message"] = r.message if r.status == "error" else ""
        _table(entries, out)
    return _exit_code(entries)


def cmd_eval(args, out, err) -> int:
    try:
        e = parse(args.expr)
    except ParseError as exc:
        print(f"parse error: {exc}", file=err)
        return EXIT_USAGE
    try:
        s = Evaluator().eval(e, args.order)
    except MockThetaError as exc:
        print(f"evaluation error ({exc.kind}): {exc}", file=err)
        return EXIT_ERROR
    if args.json:
        print(dump_json({"expr": to_text(e), **s.to_json()}), file=out)
    else:
        print(s, file=out)
    return EXIT_PASS


def cmd_props(args, out) -> int:
    results = run_all(args.cases, args.order, args.seed)
    entries = [r.to_json() for r in results]
    if args.json:
        print(dump_json(entries), file=out)
    else:
        _table(entries, out)
    return _exit_code(entries)


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        # argparse reports usage errors on sys.stderr
        with contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
            if args.command == "list":
                return cmd_list(args, out)
            if args.command == "verify":
                return cmd_verify(args, out, args.subparser)
            if args.command == "eval":
                return cmd_eval(args, out, err)
            return cmd_props(args, out)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
