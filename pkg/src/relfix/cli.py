"""Command line entry point: ``relfix certify | iterate | search``.

Exit codes: certify 0 certified / 1 not certified; iterate 0 fixed point /
1 otherwise; search 0 iff no violations.  Input errors exit 2.
"""

from __future__ import annotations

import argparse
import sys

from .certifier import ALTERNATIVES, certify_theorem2
from .picard import iterate
from .scenario import ScenarioError, parse_scenario
from .search import run_search


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def _load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as err:
        raise ScenarioError(None, f"cannot read {path}: {err.strerror}") from None
    return parse_scenario(text)


def _seed_range(text: str) -> range:
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a..b, got {text!r}") from None
    if hi < lo:
        raise argparse.ArgumentTypeError("empty seed range")
    return range(lo, hi + 1)


def cmd_certify(args) -> int:
    s = _load(args.scenario)
    report = certify_theorem2(
        s.instance, s.functional, s.phi, s.pair, horizon=args.horizon, disable=tuple(args.disable)
    )
    sys.stdout.write(report.render())
    return 0 if report.certified else 1


def cmd_iterate(args) -> int:
    s = _load(args.scenario)
    m = s.instance
    x0 = args.start
    try:
        x0 = int(x0) if m.is_finite else float(x0)
    except ValueError:
        raise ScenarioError(None, f"start point {args.start!r} is not in the carrier") from None
    if args.budget is not None and args.budget < 1:
        raise ScenarioError(None, "--budget must be positive")
    trace = iterate(m, x0, args.budget, args.tol)
    sys.stdout.write(trace.render())
    return 0 if trace.outcome.kind == "fixed-point" else 1


def cmd_search(args) -> int:
    if args.n < 2:
        raise ScenarioError(None, "--n must be at least 2")
    if not 0 < args.density <= 1:
        raise ScenarioError(None, "--density must lie in (0, 1]")
    summary = run_search(args.seeds, args.n, args.density, args.cross_check)
    sys.stdout.write(summary.render())
    return 0 if summary.violations == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="relfix", description="Certify and iterate Meir-Keeler maps on relational metric spaces.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("certify", help="check every hypothesis for a scenario")
    c.add_argument("scenario")
    c.add_argument("--horizon", type=int, default=32, help="semi-recurrence horizon on intervals")
    c.add_argument("--disable", action="append", default=[], choices=ALTERNATIVES,
                   help="switch off an alternative (repeatable)")
    c.set_defaults(func=cmd_certify)

    it = sub.add_parser("iterate", help="print the Picard orbit of a start point")
    it.add_argument("scenario")
    it.add_argument("--from", dest="start", required=True)
    it.add_argument("--budget", type=int, default=None)
    it.add_argument("--tol", type=float, default=0.0, help="interval stop tolerance on d(x, Tx)")
    it.set_defaults(func=cmd_iterate)

    s = sub.add_parser("search", help="random certification sweep")
    s.add_argument("--seeds", type=_seed_range, default=range(0, 1000), help="inclusive range a..b")
    s.add_argument("--n", type=int, default=8, help="largest carrier size")
    s.add_argument("--density", type=float, default=0.5)
    s.add_argument("--cross-check", action="store_true", help="also compare with the brute-force oracles")
    s.set_defaults(func=cmd_search)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as err:
        print(f"relfix: error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
