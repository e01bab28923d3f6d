"""Command-line entry point: ``opineq run | examples | validate-weight``."""

from __future__ import annotations

import argparse
import sys

from .harness import InstanceSpec, emit_report, random_pair, run_campaign
from .ineq import run_example_suite
from .quad import gauss_legendre
from .weights import parse_weight, validate


def _interval(text):
    a, b = text.split(":")
    return float(a), float(b)


def _seeds(text):
    if ":" in text:
        lo, hi = text.split(":")
        return list(range(int(lo), int(hi) + 1))
    return [int(s) for s in text.split(",")]


def _quad(text):
    points, panels = text.lower().split("x")
    return int(points), int(panels)


def _cmd_run(args):
    specs = [InstanceSpec(dim=args.dim, interval=args.interval, seed=s, function=args.fn,
                          weight=args.weight, quad=args.quad) for s in args.seeds]
    report = run_campaign(specs, args.theorems, workers=args.workers)
    text = emit_report(report, args.format, args.out)
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        passes = sum(st.passes for st in report.theorems.values())
        print(f"{report.instances} instances, {passes} passing checks, "
              f"{len(report.failures)} failures -> {args.out}")
    return report.exit_status


def _cmd_examples(args):
    spec = InstanceSpec(dim=args.dim, interval=args.interval, seed=args.seed)
    A, B = random_pair(spec)
    weight = parse_weight(args.weight) if args.weight else None
    reports = run_example_suite(A, B, gauss_legendre(*args.quad), weight)
    width = max(len(r.theorem_id) for r in reports)
    failed = 0
    for r in reports:
        failed += not r.passed
        t = "-" if r.tightness is None else f"{r.tightness:.4f}"
        print(f"{r.theorem_id:<{width}}  {'PASS' if r.passed else 'FAIL'}  "
              f"coef={r.coefficient:.6g}  margin={r.margin:+.3e}  tightness={t}")
    return 1 if failed else 0


def _cmd_validate_weight(args):
    rep = validate(parse_weight(args.weight))
    for name in ("weight", "symmetry_residual", "symmetric", "monotone_class", "nonnegative",
                 "p0", "p_half", "integral", "dinf_norm", "d2_norm"):
        print(f"{name:18} {getattr(rep, name)}")
    print(f"{'valid':18} {rep.valid}")
    for problem in rep.problems:
        print(f"  problem: {problem}")
    return 0 if rep.valid else 1


def build_parser():
    parser = argparse.ArgumentParser(prog="opineq", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a seeded campaign of inequality checks")
    run.add_argument("--dim", type=int, default=4)
    run.add_argument("--interval", type=_interval, default=(0.5, 4.0))
    run.add_argument("--fn", default="power:2")
    run.add_argument("--weight", default="bump")
    run.add_argument("--seeds", type=_seeds, default=list(range(10)))
    run.add_argument("--theorems", default="all")
    run.add_argument("--quad", type=_quad, default=(16, 32))
    run.add_argument("--format", choices=("json", "csv"), default="json")
    run.add_argument("--out", default=None)
    run.add_argument("--workers", type=int, default=1)
    run.set_defaults(func=_cmd_run)

    ex = sub.add_parser("examples", help="run the power/inverse/log example suite")
    ex.add_argument("--dim", type=int, default=4)
    ex.add_argument("--interval", type=_interval, default=(0.5, 4.0))
    ex.add_argument("--seed", type=int, default=0)
    ex.add_argument("--weight", default=None)
    ex.add_argument("--quad", type=_quad, default=(16, 32))
    ex.set_defaults(func=_cmd_examples)

    vw = sub.add_parser("validate-weight", help="check a weight for symmetry and monotonicity")
    vw.add_argument("weight")
    vw.set_defaults(func=_cmd_validate_weight)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
