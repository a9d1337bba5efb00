"""Command-line front end.

Subcommands: hull, sweep, verify, count, census, conic fit, conic count.
Run `modhull <subcommand> -h` for flags.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .conics import CONIC_MONOMIALS, count_conic_points_in_box, find_vanishing_form
from .experiments import (
    APolicy,
    exponent_summary,
    lower_bound_census,
    render_exponent_summary,
    run_sweep,
    write_csv,
)
from .geometry import twice_area
from .hullfast import PruneConfig, fast_hull, verify_against_naive
from .hyperbola import HyperbolaSpec, count_in_box, predicted_count, read_points_file

__all__ = ["main"]


def _prune_config(args) -> PruneConfig:
    return PruneConfig(
        cutoff_factor=Fraction(args.cutoff_factor),
        method=getattr(args, "method", "auto"),
    )


def _cmd_hull(args) -> int:
    spec = HyperbolaSpec(args.m, args.a)
    cfg = _prune_config(args)
    poly = fast_hull(spec, cfg)
    if args.json:
        out = {
            "m": spec.m,
            "a": spec.a,
            "method": cfg.resolve_method(spec.m),
            "v": poly.vertex_count,
            "twice_area": twice_area(poly),
            "vertices": [list(p) for p in poly.vertices],
        }
        print(json.dumps(out))
    else:
        print(f"m={spec.m} a={spec.a} method={cfg.resolve_method(spec.m)} v={poly.vertex_count}")
        for x, y in poly.vertices:
            print(f"{x} {y}")
    return 0


def _cmd_sweep(args) -> int:
    policy = APolicy.parse(args.a_policy, seed=args.seed)
    cfg = _prune_config(args)
    records = run_sweep(
        args.m_min,
        args.m_max,
        policy,
        cfg,
        workers=args.workers,
        use_cache=not args.no_cache,
    )
    write_csv(args.out, records)
    print(f"wrote {len(records)} records to {args.out}")
    print(render_exponent_summary(exponent_summary(records)))
    return 0


def _cmd_verify(args) -> int:
    policy = APolicy.parse(args.a_policy, seed=args.seed)
    cfg = _prune_config(args)
    mismatches = 0
    checked = 0
    for m in range(args.m_min, args.m_max + 1):
        for a in policy.a_values(m):
            report = verify_against_naive(HyperbolaSpec(m, a), cfg)
            checked += 1
            if not report.equal:
                mismatches += 1
                print(
                    f"MISMATCH m={m} a={a}: "
                    f"fast v={len(report.fast_vertices)} naive v={len(report.naive_vertices)} "
                    f"missing={list(report.missing)} extra={list(report.extra)}"
                )
    if mismatches:
        print(f"{mismatches} mismatches out of {checked} hulls")
        return 1
    print(f"all {checked} hulls match")
    return 0


def _cmd_count(args) -> int:
    spec = HyperbolaSpec(args.m, args.a)
    exact = count_in_box(spec, args.U, args.V)
    main_term = predicted_count(spec, args.U, args.V)
    diff = Fraction(exact) - main_term
    print(f"count: {exact}")
    print(f"main term: {main_term} (~{float(main_term):.6g})")
    print(f"difference: {diff} (~{float(diff):.6g})")
    return 0


def _cmd_census(args) -> int:
    violations, equality = lower_bound_census(args.m_min, args.m_max)
    total = args.m_max - args.m_min + 1
    print(f"moduli checked: {total}")
    print(f"equality cases v = 2*(tau(m-1)-1): {equality}")
    if violations:
        for m, v, bound in violations:
            print(f"VIOLATION m={m}: v={v} < {bound}")
        return 1
    print("violations: none")
    return 0


def _cmd_conic_fit(args) -> int:
    points = read_points_file(args.points)
    vec = find_vanishing_form(points, CONIC_MONOMIALS)
    if vec is None:
        print("no vanishing form (evaluation matrix has full rank)")
    else:
        print(" ".join(str(c) for c in vec))
    return 0


def _cmd_conic_count(args) -> int:
    count, sols = count_conic_points_in_box(args.coeffs, args.H)
    print(f"count: {count}")
    for x, y in sols:
        print(f"{x} {y}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="modhull", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_prune_flags(p, with_method=True):
        if with_method:
            p.add_argument("--method", choices=("naive", "fast", "auto"), default="auto")
        p.add_argument("--cutoff-factor", default="4", help="rational scale of the product cutoff")

    p = sub.add_parser("hull", help="hull of one H_a(m): vertex count and vertices")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    add_prune_flags(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_hull)

    p = sub.add_parser("sweep", help="vertex counts over a modulus range, CSV out")
    p.add_argument("--m-min", type=int, required=True)
    p.add_argument("--m-max", type=int, required=True)
    p.add_argument("--a-policy", required=True, help="one | all | sample:K")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--no-cache", action="store_true")
    add_prune_flags(p)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("verify", help="compare pruned hulls against brute force")
    p.add_argument("--m-min", type=int, required=True)
    p.add_argument("--m-max", type=int, required=True)
    p.add_argument("--a-policy", required=True, help="one | all | sample:K")
    p.add_argument("--seed", type=int, default=0)
    add_prune_flags(p, with_method=False)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("count", help="box count vs the expected main term")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--U", type=int, required=True)
    p.add_argument("--V", type=int, required=True)
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("census", help="check v_1(m) >= 2*(tau(m-1)-1) over a range")
    p.add_argument("--m-min", type=int, default=3)
    p.add_argument("--m-max", type=int, required=True)
    p.set_defaults(func=_cmd_census)

    p = sub.add_parser("conic", help="conic fitting and integral point counting")
    csub = p.add_subparsers(dest="conic_command", required=True)
    pf = csub.add_parser("fit", help="vanishing quadratic form through a point file")
    pf.add_argument("--points", required=True, help="file with one 'x y' pair per line")
    pf.set_defaults(func=_cmd_conic_fit)
    pc = csub.add_parser("count", help="integral solutions of a conic in [0,H]^2")
    pc.add_argument("--coeffs", type=int, nargs=6, required=True, metavar=("A", "B", "C", "D", "E", "F"))
    pc.add_argument("--H", type=int, required=True)
    pc.set_defaults(func=_cmd_conic_count)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
