"""``quadalg`` entry point.

Exit codes: 0 positive verdict, 1 negative verdict, 2 input error,
3 violated internal invariant.
"""

import argparse
import json
import sys

from ..errors import QuadAlgError
from ..quadratic import DEFAULT_CUTOFF
from .parser import parse, parse_representation
from .reports import COMMANDS, digest, cmd_cohomology


def build_parser():
    p = argparse.ArgumentParser(prog="quadalg", description="Exact computations with quadratic algebras.")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("file", help="presentation file, or '-' for stdin")
    p.add_argument("--max", type=int, default=DEFAULT_CUTOFF, metavar="N",
                   help=f"degree cutoff (default {DEFAULT_CUTOFF})")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--margin", type=int, default=2, metavar="M",
                   help="stabilization margin for the gr heuristic (default 2)")
    p.add_argument("--rep", metavar="FILE", help="representation file for 'cohomology'")
    p.add_argument("--primal", action="store_true",
                   help="'frobenius': test A itself instead of its dual")
    return p


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def run(argv):
    """Return (exit_code, output_text)."""
    args = build_parser().parse_args(argv)
    if args.max < 2:
        return 2, "error: --max must be at least 2\n"
    if args.margin < 0:
        return 2, "error: --margin must be non-negative\n"
    try:
        text = _read(args.file)
        nh = parse(text)
        if args.command == "cohomology":
            rep_text = _read(args.rep) if args.rep else ""
            rep_obj = parse_representation(rep_text, nh.labels) if args.rep else None
            report = cmd_cohomology(nh, args, digest(text, rep_text), rep_obj)
        else:
            report = COMMANDS[args.command](nh, args, digest(text))
    except OSError as e:
        return 2, f"error: {e}\n"
    except QuadAlgError as e:
        kind = type(e).__name__
        if args.json:
            return e.exit_code, json.dumps({"format": 1, "command": args.command, "error": kind,
                                            "message": str(e)}, sort_keys=True, indent=2) + "\n"
        return e.exit_code, f"error ({kind}): {e}\n"
    if args.json:
        out = json.dumps(report.as_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    else:
        out = report.text()
    return report.exit_code, out


def main(argv=None):
    code, out = run(sys.argv[1:] if argv is None else argv)
    stream = sys.stdout if code in (0, 1) else sys.stderr
    stream.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
