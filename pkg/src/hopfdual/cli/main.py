"""Command-line entry point: ``hopfdual run <file>`` and ``hopfdual check <file>``."""

import argparse
import sys

from ..errors import HopfDualError
from .runner import run_tasks
from .session import parse_session


def _load(path):
    with open(path, encoding="utf-8") as fh:
        return parse_session(fh.read())


def main(argv=None):
    ap = argparse.ArgumentParser(prog="hopfdual", description="Verify Hopf-algebraic constructions from a session file.")
    sub = ap.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="parse a session and run its tasks")
    run.add_argument("session")
    run.add_argument("--json", metavar="OUT", help="write the JSON report to OUT ('-' for stdout)")
    run.add_argument("--verbose", action="store_true", help="show witnesses and artifacts for every task")
    chk = sub.add_parser("check", help="parse and validate a session without running tasks")
    chk.add_argument("session")
    args = ap.parse_args(argv)

    try:
        spec = _load(args.session)
    except (OSError, HopfDualError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if args.command == "check":
        print(f"ok: {len(spec.objects)} objects, {len(spec.tasks)} tasks")
        return 0
    report = run_tasks(spec)
    if args.json == "-":
        sys.stdout.write(report.to_json())
    else:
        sys.stdout.write(report.to_text(args.verbose))
        if args.json:
            with open(args.json, "w", encoding="utf-8") as fh:
                fh.write(report.to_json())
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
