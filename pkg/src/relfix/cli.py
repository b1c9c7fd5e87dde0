"""relfix command line: axioms | verify | solve | certify | report.

Exit statuses: 0 every requested verdict passed, 1 a verdict failed,
2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .problemfile import ProblemFileError, build_problem, parse_problem
from .report import run_command
from .solver import RelationBroken, StartNotAdmissible

COMMANDS = ("axioms", "verify", "solve", "certify", "report")


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="relfix",
        description="Verify and solve relational fixed-point problems in b-metric spaces.",
    )
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("file", help="problem file")
    p.add_argument("--tol", type=float, default=None, help="verification/solve tolerance override")
    p.add_argument("--start", type=float, default=None, help="starting point value for the iteration")
    p.add_argument("--max-iter", type=int, default=None, help="iteration cap override")
    p.add_argument("--s", type=float, default=None, dest="s_override",
                   help="override the space's relaxation coefficient")
    p.add_argument("--json", action="store_true", help="emit the structured JSON report")
    return p


def _human(report: dict, out):
    def emit(prefix, value):
        if isinstance(value, dict):
            print(f"{prefix}:", file=out)
            for k, v in value.items():
                emit("  " + k, v)
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            print(f"{prefix}: [{len(value)} entries]", file=out)
        else:
            print(f"{prefix}: {value}", file=out)

    for key, value in report.items():
        if key == "header":
            continue
        emit(key, value)


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        with open(args.file, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        print(f"relfix: cannot read {args.file}: {exc}", file=sys.stderr)
        return 2

    try:
        pf = parse_problem(raw.decode("utf-8"))
        bundle = build_problem(pf, s_override=args.s_override)
    except (ProblemFileError, ValueError, UnicodeDecodeError) as exc:
        print(f"relfix: {args.file}: {exc}", file=sys.stderr)
        return 2

    try:
        report, ok = run_command(
            args.command,
            bundle,
            input_bytes=raw,
            start=args.start,
            tol=args.tol,
            max_iter=args.max_iter,
        )
    except (StartNotAdmissible, RelationBroken, ValueError) as exc:
        print(f"relfix: {exc}", file=sys.stderr)
        return 2

    if args.json:
        json.dump(report, sys.stdout, indent=2, sort_keys=True)
        print()
    else:
        _human(report, sys.stdout)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
