"""Command-line front end: ``gdrs-cosets {peculiarity,coset-wd,verify}``."""

from __future__ import annotations

import argparse
import sys
from collections import Counter
from math import comb, gcd

from .errors import BudgetExceeded, GdrsError, RouteMismatch
from .gdrs import (
    CosetLeader2,
    all_weight2_leaders,
    bd2_total,
    coset_wd_weight1,
    coset_wd_weight2,
    leader_lambda,
    make_code,
    mds_code_wd,
    symmetry_residual,
    weight2_classes,
)
from .peculiarity import compute_table, profile_table, reconcile
from .report import PASS, UNTESTED, Check, Report, check_equal, render
from .ring_orbits import RingContext, orbit_partition
from .suites import SUITES, run_suite

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


class UsageError(Exception):
    pass


def _positive(text):
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="text")
    common.add_argument("--budget", type=_positive, default=None,
                        help="brute-force work limit (default: $GDRS_BUDGET or 10^8)")
    common.add_argument("--jobs", type=_positive, default=1, help="worker processes for brute force")
    common.add_argument("--out", default=None, help="write the report here instead of stdout")

    parser = argparse.ArgumentParser(prog="gdrs-cosets", description="Coset weight distributions of GDRS codes.")
    sub = parser.add_subparsers(dest="command", required=True)

    pec = sub.add_parser("peculiarity", parents=[common], help="subset-sum counts in Z_R")
    pec.add_argument("R", type=int)
    pec.add_argument("mu", type=int)
    pec.add_argument("--method", choices=("brute", "profile", "closed", "reconcile"), default="profile")

    cw = sub.add_parser("coset-wd", parents=[common], help="coset weight distributions of a GDRS code")
    cw.add_argument("q", type=int)
    cw.add_argument("d", type=int)
    cw.add_argument("--gamma2", type=int, default=None,
                    help="also report the coset led by (1,2; 1,gamma2); gamma2 is an integer-encoded element")
    cw.add_argument("--all-leaders", action="store_true",
                    help="classify every weight-2 leader, not one per class")

    ver = sub.add_parser("verify", parents=[common], help="run a verification battery")
    ver.add_argument("--suite", choices=SUITES, required=True)
    ver.add_argument("--q-max", type=_positive, default=None)
    ver.add_argument("--R-max", type=_positive, default=None)
    return parser


def cmd_peculiarity(args):
    R, mu = args.R, args.mu
    ctx = RingContext(R, mu)
    params = {"R": R, "mu": mu, "method": args.method}
    checks = []
    if args.method == "reconcile":
        table, rec = reconcile(R, mu, args.budget, args.jobs, require_bruteforce=False)
        params["routes"] = list(rec.routes)
        checks.append(Check("routes agree", PASS, None, " = ".join(rec.routes)))
        for route, why in sorted(rec.skipped.items()):
            checks.append(Check(f"route {route}", UNTESTED, detail=why))
    else:
        try:
            table = compute_table(R, mu, args.method, args.budget, args.jobs)
        except LookupError as exc:
            raise UsageError(str(exc)) from exc
    case = table.closed_form_case
    if case is None and args.method == "reconcile":
        case = rec.closed_form_case
    if case:
        params["closed_form_case"] = case
    part = orbit_partition(ctx)
    rows = [
        {
            "lambda": lam,
            "value": table[lam],
            "orbit": part.label(lam),
            "oplus_class": lam % ctx.D,
            "delta_from_0": table.delta(0, lam),
        }
        for lam in range(R)
    ]
    checks.append(check_equal("mass", comb(R, mu), table.mass))
    checks.append(check_equal("negation symmetry", True, all(table[lam] == table[-lam] for lam in range(R))))
    checks.append(check_equal(
        "constant on orbits", True,
        all(len({table[lam] for lam in orbit}) == 1 for orbit in part.full_orbits),
    ))
    return Report("peculiarity", params, rows, checks)


def cmd_coset_wd(args):
    q, d = args.q, args.d
    if d > q:
        raise UsageError(f"need d <= q, got q={q}, d={d}")
    code = make_code(q, d)
    fs = code.field
    table = profile_table(q - 1, d - 2)
    classes = weight2_classes(code, table)
    weight0 = mds_code_wd(code.n, d, q)
    weight1 = coset_wd_weight1(code)
    columns = [("A_w", weight0), ("weight1", weight1)] + [(c.label, c.wd) for c in classes]

    params = {
        "q": q, "d": d, "n": code.n, "k": code.k, "beta": fs.beta,
        "classes": [
            {"label": c.label, "lambdas": list(c.lambdas), "gamma": c.gamma, "B_d-2": c.bd2, "n_cosets": c.n_cosets}
            for c in classes
        ],
    }
    checks = []
    if args.gamma2 is not None:
        if not 1 <= args.gamma2 < q:
            raise UsageError(f"gamma2 must be a nonzero element 1..{q - 1}")
        leader = CosetLeader2(1, 2, 1, args.gamma2)
        columns.append(("leader", coset_wd_weight2(code, leader, table)))
        params["gamma2"] = args.gamma2
        params["leader_lambda"] = leader_lambda(code, leader)

    rows = [{"w": w, **{name: wd[w] for name, wd in columns}} for w in range(code.n + 1)]

    for name, wd in columns:
        checks.append(check_equal(f"mass {name}", q**code.k, wd.total))
    checks.append(check_equal(
        "symmetry residual across classes", True,
        all(symmetry_residual(classes[0].wd, c.wd, code.n, d) for c in classes),
    ))
    checks.append(check_equal(
        "integral spectrum", bd2_total(q, d), sum(c.bd2 * c.n_cosets for c in classes),
    ))
    checks.append(check_equal("single class iff gcd(q-1, d-2) = 1", gcd(q - 1, d - 2) == 1, len(classes) == 1))
    if args.all_leaders:
        by_class = Counter()
        total = 0
        index = {lam: c.label for c in classes for lam in c.lambdas}
        for leader in all_weight2_leaders(code):
            lam = leader_lambda(code, leader)
            by_class[index[lam]] += 1
            total += table[lam]
        for c in classes:
            checks.append(check_equal(f"cosets in {c.label}", c.n_cosets, by_class[c.label]))
        checks.append(check_equal("integral spectrum over all leaders", bd2_total(q, d), total))
    return Report("coset-wd", params, rows, checks)


def cmd_verify(args):
    return run_suite(args.suite, q_max=args.q_max, R_max=args.R_max, budget=args.budget, jobs=args.jobs)


COMMANDS = {"peculiarity": cmd_peculiarity, "coset-wd": cmd_coset_wd, "verify": cmd_verify}


def _emit(text, out):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = COMMANDS[args.command](args)
    except RouteMismatch as exc:
        print(f"route mismatch at R={exc.R} mu={exc.mu} lambda={exc.lam}:", file=sys.stderr)
        for route, value in sorted(exc.values.items()):
            print(f"  {route}: {value}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, GdrsError, ValueError) as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(render(report, args.format), args.out)
    return EXIT_CHECK_FAILED if report.failed else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
