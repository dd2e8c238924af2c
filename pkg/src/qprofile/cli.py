"""Command-line entry point: ``qprofile <subcommand> ...``.

Exit status is 0 on success, 1 when a verification finds a mismatch and
2 on bad arguments or an exceeded enumeration budget.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from qprofile import counting, oracle
from qprofile.ffield import parse_field
from qprofile.fqlinalg import format_matrix, parse_matrix, parse_vectors, span
from qprofile.fqpoly import format_poly, invariant_factors, parse_poly
from qprofile.partition import Partition, partitions_of
from qprofile.profiles import defect_chain, defect_dimensions, is_simple_map, parse_map, profile


class UsageError(Exception):
    pass


def _read_arg(text: str) -> str:
    if text.startswith("@"):
        return Path(text[1:]).read_text().strip()
    if os.path.isfile(text):
        return Path(text).read_text().strip()
    return text


def _field(args):
    try:
        return parse_field(args.q)
    except ValueError as exc:
        raise UsageError(f"--q {args.q}: {exc}") from None


def _partition(text: str) -> Partition:
    try:
        return Partition.parse(text)
    except ValueError as exc:
        raise UsageError(f"bad partition {text!r}: {exc}") from None


def _poly_json(p: counting.QPolynomial) -> dict:
    return {"text": str(p), "coeffs": p.to_list()}


def _emit(args, payload: dict, text: str):
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        print(text)


def cmd_sigma(args) -> int:
    mu = _partition(args.mu)
    poly = counting.sigma_poly(mu)
    payload = {"partition": str(mu), "poly": _poly_json(poly)}
    lines = []
    if args.q is not None:
        ctx = _field(args)
        value = counting.sigma_value(mu, ctx.q)
        payload["q"] = ctx.q
        payload["value"] = value
        lines.append(str(value))
    lines.append(f"sigma{mu}(q) = {poly}")
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_sigma_table(args) -> int:
    n = args.n
    q = _field(args).q if args.q is not None else None
    rows = []
    for mu in partitions_of(n):
        poly = counting.sigma_poly(mu)
        row = {"partition": str(mu), "poly": _poly_json(poly)}
        if q is not None:
            row["value"] = poly(q)
        rows.append(row)
    checks = {str(k): counting.column_sum_check(n, k) for k in range(n)}
    payload = {"n": n, "q": q, "rows": rows, "column_sums_ok": checks}
    lines = []
    width = max(len(r["partition"]) for r in rows)
    for r in rows:
        value = f"  = {r['value']}" if q is not None else ""
        lines.append(f"{r['partition'].ljust(width)}  {r['poly']['text']}{value}")
    lines.append("column sums: " + ("ok" if all(checks.values()) else "FAILED"))
    _emit(args, payload, "\n".join(lines))
    return 0 if all(checks.values()) else 1


def cmd_verify(args) -> int:
    ctx = _field(args)
    f = parse_poly(ctx, _read_arg(args.poly)) if args.poly else None
    report = oracle.verify_sigma(ctx, args.n, f, budget=args.budget, workers=args.workers)
    _emit(args, report.to_dict(args.timing), report.to_text(args.timing))
    return 0 if report.passed else 1


def cmd_verify_duality(args) -> int:
    ctx = _field(args)
    report = oracle.verify_duality(ctx, args.n, args.trials, args.seed, budget=args.budget)
    _emit(args, report.to_dict(args.timing), report.to_text(args.timing))
    return 0 if report.passed else 1


def cmd_splitting(args) -> int:
    ctx = _field(args)
    value = counting.splitting_count(args.m, args.d, ctx.q)
    payload = {"m": args.m, "d": args.d, "q": ctx.q, "value": value, "poly": _poly_json(counting.splitting_poly(args.m, args.d))}
    lines = [str(value)]
    status = 0
    if args.brute:
        brute = oracle.splitting_brute(ctx, args.m, args.d, budget=args.budget)
        payload["brute"] = brute
        payload["match"] = brute == value
        lines.append(f"brute force: {brute} ({'ok' if brute == value else 'MISMATCH'})")
        status = 0 if brute == value else 1
    _emit(args, payload, "\n".join(lines))
    return status


def cmd_whittaker(args) -> int:
    rows = []
    for mu in partitions_of(args.n):
        c = counting.whittaker_coefficient(mu)
        rows.append({"partition": str(mu), "sign": c.sign, "magnitude": _poly_json(c.magnitude), "text": str(c)})
    width = max(len(r["partition"]) for r in rows)
    text = "\n".join(f"{r['partition'].ljust(width)}  {r['text']}" for r in rows)
    _emit(args, {"n": args.n, "rows": rows}, text)
    return 0


def cmd_profile(args) -> int:
    ctx = _field(args)
    t = parse_matrix(ctx, _read_arg(args.matrix))
    if not t.is_square:
        raise UsageError("--matrix must be square")
    w = span(ctx, t.nrows, parse_vectors(_read_arg(args.subspace)))
    mu = profile(t, w)
    _emit(args, {"q": ctx.q, "matrix": format_matrix(t), "subspace_dim": w.dim, "profile": str(mu)}, str(mu))
    return 0


def cmd_defect(args) -> int:
    ctx = _field(args)
    text = _read_arg(args.map)
    gens = parse_vectors(text.partition("|")[0])
    if not gens and args.n is None:
        raise UsageError("an empty domain needs --n")
    n = args.n if args.n is not None else len(gens[0])
    pm = parse_map(ctx, n, text)
    dims, ell, _ = defect_chain(pm)
    factors = [format_poly(f) for f in invariant_factors(pm)]
    payload = {
        "q": ctx.q,
        "map": str(pm),
        "defect": str(defect_dimensions(pm)),
        "chain": list(dims),
        "ell": ell,
        "invariant_factors": factors,
        "simple": is_simple_map(pm),
    }
    lines = [
        f"defect dimensions: {payload['defect']}",
        f"chain dims: {list(dims)}  ell = {ell}",
        f"invariant factors: {[str(f) for f in invariant_factors(pm)]}",
        f"simple: {'yes' if payload['simple'] else 'no'}",
    ]
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_enumerate(args) -> int:
    ctx = _field(args)
    if args.format == "json":
        subs = [format_matrix(w.basis_matrix()) for w in oracle.enumerate_subspaces(ctx, args.n, args.k, args.budget)]
        print(json.dumps({"q": ctx.q, "n": args.n, "k": args.k, "count": len(subs), "subspaces": subs}, indent=2))
    else:
        for w in oracle.enumerate_subspaces(ctx, args.n, args.k, args.budget):
            print(format_matrix(w.basis_matrix()) if w.dim else "{0}")
    return 0


def cmd_selftest(args) -> int:
    from qprofile.ffield import make_field

    results = {}
    results["orbit_stabilizer"] = all(
        counting.orbit_stabilizer_identity_check(n, k) for n in range(11) for k in range(n + 1)
    )
    results["column_sums"] = all(counting.column_sum_check(n, k) for n in range(1, 9) for k in range(n + 1))
    try:
        for n in range(1, 13):
            for mu in partitions_of(n):
                counting.sigma_poly(mu)
                counting.whittaker_coefficient(mu)
        results["polynomiality"] = True
    except ArithmeticError:
        results["polynomiality"] = False
    report = oracle.verify_duality(make_field(2), 3, trials=args.trials, seed=args.seed, budget=args.budget)
    results["duality"] = report.passed
    ok = all(results.values())
    text = "\n".join(f"{k}: {'ok' if v else 'FAILED'}" for k, v in results.items())
    _emit(args, {"results": results, "passed": ok}, text + ("\nPASS" if ok else "\nFAIL"))
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--budget", type=int, default=None, help="enumeration budget (default $QPROFILE_BUDGET or 10^7)")
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="qprofile", description="Subspace profiles over finite fields.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sigma", parents=[common], help="number of subspaces with a profile")
    p.add_argument("--mu", required=True)
    p.add_argument("--q")
    p.set_defaults(func=cmd_sigma)

    p = sub.add_parser("sigma-table", parents=[common], help="sigma for every partition of n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q")
    p.set_defaults(func=cmd_sigma_table)

    p = sub.add_parser("verify", parents=[common], help="brute-force check of sigma")
    p.add_argument("--q", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--poly")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--timing", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("verify-duality", parents=[common], help="profile/defect duality on random operators")
    p.add_argument("--q", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--timing", action="store_true")
    p.set_defaults(func=cmd_verify_duality)

    p = sub.add_parser("splitting", parents=[common], help="count splitting subspaces")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--q", required=True)
    p.add_argument("--brute", action="store_true")
    p.set_defaults(func=cmd_splitting)

    p = sub.add_parser("whittaker", parents=[common], help="q-Whittaker coefficients of p_n")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_whittaker)

    p = sub.add_parser("profile", parents=[common], help="profile of a subspace under a matrix")
    p.add_argument("--q", required=True)
    p.add_argument("--matrix", required=True)
    p.add_argument("--subspace", required=True)
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("defect", parents=[common], help="defect dimensions of a partial map GENS|IMAGES")
    p.add_argument("--q", required=True)
    p.add_argument("--map", required=True)
    p.add_argument("--n", type=int)
    p.set_defaults(func=cmd_defect)

    p = sub.add_parser("enumerate", parents=[common], help="list k-dimensional subspaces")
    p.add_argument("--q", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("selftest", parents=[common], help="symbolic identities and duality")
    p.add_argument("--trials", type=int, default=20)
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError, oracle.BudgetExceeded, OSError) as exc:
        print(f"qprofile {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
