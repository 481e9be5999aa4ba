"""Command-line front end.

Every command prints a versioned report ({"schema": "1", ...}) carrying the
seed and a method tag on each numeric so identical invocations produce
byte-identical output.

Exit codes: 0 success, 1 hard verification failure, 2 usage or parse error,
3 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

from ._util import DEFAULT_SEED
from .engine import BudgetError, b_m, bias, c_phi, e_phi, enum_budget, symmetric_c_phi
from .modfun import Angle, AngleError, parse_angle, reduce_angle
from .poly import ParseError, PolyGF2, SymmetricSpec, format_poly, parse
from .deriv import Restriction, c_restricted, contribution, lemma_hypotheses, v_phi, v_restricted
from .closedform import (b_m_reconstruct, e3_contribution_bound, e_kphi_symmetric, ell1,
                         psi, quadratic_max_prediction, real_part_profile, symm_mod_bound)
from .modfun import fraction_weight_mod

EXIT_OK, EXIT_VERIFY_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


def _num(value, method: str, name: str) -> dict:
    row = {"name": name, "method": method}
    if isinstance(value, complex):
        row["re"], row["im"] = value.real, value.imag
    else:
        row["value"] = value
    return row


def _emit(report: dict, fmt: str):
    if fmt == "json":
        print(json.dumps(report, sort_keys=True))
        return
    rows = report.get("results", [])
    if fmt == "csv":
        buf = io.StringIO()
        keys = sorted({k for r in rows for k in r})
        writer = csv.DictWriter(buf, fieldnames=keys)
        writer.writeheader()
        for r in rows:
            writer.writerow(r)
        sys.stdout.write(buf.getvalue())
        return
    for key, val in report.items():
        if key in ("results", "schema"):
            continue
        print(f"{key}: {val}")
    for r in rows:
        if "value" in r:
            print(f"{r['name']} = {r['value']:.9g}  [{r.get('method', '-')}]"
                  + (f"  {r['note']}" if r.get("note") else ""))
        elif "re" in r:
            print(f"{r['name']} = {r['re']:.9g} + {r['im']:.9g}i  [{r.get('method', '-')}]")
        else:
            print("  ".join(f"{k}={v}" for k, v in r.items()))


def _poly_from_args(args) -> PolyGF2:
    p = parse(args.poly, n=args.n)
    if args.n is not None and p.n != args.n:
        p = PolyGF2(args.n, p.const, p.linear, p.edges, p.triples)
    return p


def _base_report(args, command: str) -> dict:
    return {"schema": "1", "command": command, "seed": getattr(args, "seed", DEFAULT_SEED)}


def cmd_corr(args) -> int:
    rep = _base_report(args, "corr")
    ang = Angle(parse_angle(args.phi))
    rep["phi"] = ang.phi
    results = []
    if args.symmetric:
        if args.n is None:
            raise ValueError("--symmetric requires --n")
        coeffs = tuple(int(c) for c in args.symmetric.split(","))
        s = SymmetricSpec(args.n, coeffs)
        results.append(_num(symmetric_c_phi(s, ang), "weight-class", "C"))
        rep["poly"] = f"symmetric{list(coeffs)}"
    else:
        p = _poly_from_args(args)
        rep["poly"] = format_poly(p)
        rep["n"] = p.n
        val = e_phi(p, ang, threads=args.threads)
        results.append(_num(abs(val), "brute", "C"))
        results.append(_num(val, "brute", "E"))
    rep["results"] = results
    _emit(rep, args.format)
    return EXIT_OK


def cmd_bcorr(args) -> int:
    rep = _base_report(args, "bcorr")
    p = _poly_from_args(args)
    rep["poly"], rep["n"], rep["m"] = format_poly(p), p.n, args.m
    rep["results"] = [_num(b_m(p, args.m), "brute", "B"),
                      _num(bias(p), "brute", "bias")]
    _emit(rep, args.format)
    return EXIT_OK


def cmd_contrib(args) -> int:
    rep = _base_report(args, "contrib")
    p = _poly_from_args(args)
    ang = Angle(parse_angle(args.phi))
    if len(args.y) != p.n or any(ch not in "01" for ch in args.y):
        raise ParseError(f"direction must be {p.n} bits of 0/1", 0)
    # leftmost character of the direction string is x1
    y = sum(1 << i for i, ch in enumerate(args.y) if ch == "1")
    method = "product" if p.degree() <= 2 and args.method == "auto" else (
        "enum" if args.method == "auto" else args.method)
    val = contribution(p, y, ang, method)
    rep.update({"poly": format_poly(p), "phi": ang.phi, "y": args.y})
    rep["results"] = [_num(val, "product" if method == "product" else "brute", "c_y")]
    _emit(rep, args.format)
    return EXIT_OK


def cmd_restricted(args) -> int:
    rep = _base_report(args, "restricted")
    p = _poly_from_args(args)
    ang = Angle(parse_angle(args.phi))
    r = Restriction(args.r)
    rep.update({"poly": format_poly(p), "phi": ang.phi, "r": args.r})
    flags = lemma_hypotheses(p, r, t=args.t) if p.degree() <= 2 else None
    rep["results"] = [_num(c_restricted(p, r, ang), "brute", "c(p,r)"),
                      _num(v_restricted(r, ang), "closed-form", "v(r)")]
    if flags is not None:
        rep["results"].append({"name": "hypotheses", "odd_even": flags.odd_even,
                               "gap": flags.gap, "buffer": flags.buffer, "t": args.t})
    _emit(rep, args.format)
    return EXIT_OK


def cmd_closed_form(args) -> int:
    rep = _base_report(args, "closed-form")
    results = []
    if args.which == "e-formula":
        val = e_kphi_symmetric(args.n, args.m, args.k, args.poly_kind)
        results.append(_num(val, "closed-form", f"E_{args.k}phi({args.poly_kind})"))
    elif args.which == "max-c":
        pred = quadratic_max_prediction(args.n, Angle(parse_angle(args.phi)))
        results.append(_num(pred["e2"], "closed-form", "C(e2)"))
        results.append(_num(pred["e2+e1"], "closed-form", "C(e2+e1)"))
    elif args.which == "v":
        results.append(_num(v_phi(args.n, Angle(parse_angle(args.phi))), "closed-form", "v"))
    elif args.which == "psi":
        results.append(_num(psi(args.n, args.m), "closed-form", "Psi"))
        results.append(_num(ell1(args.m), "closed-form", "l1"))
    elif args.which == "symmetric-bound":
        results.append(_num(symm_mod_bound(args.n, args.m, args.d), "closed-form", "bound"))
    elif args.which == "real-profile":
        prof = real_part_profile(args.n, args.m)
        for fld in ("chi", "scale", "pred_real_e2", "pred_real_e2e1", "pred_sqrt_v",
                    "residual_bound"):
            results.append(_num(getattr(prof, fld), "closed-form", fld))
    elif args.which == "balance":
        frac = fraction_weight_mod(args.n, args.m, args.k)
        results.append({"name": "fraction", "numerator": frac.numerator,
                        "denominator": frac.denominator, "method": "closed-form"})
        results.append(_num(abs(float(frac) - 1 / args.m), "closed-form", "gap"))
        results.append(_num(math.cos(math.pi / args.m) ** args.n, "closed-form", "bound"))
    rep["results"] = results
    _emit(rep, args.format)
    return EXIT_OK


def cmd_search(args) -> int:
    from .search import max_b_m, max_c_phi
    rep = _base_report(args, f"search {args.search_cmd}")
    if args.search_cmd == "max-c":
        res = max_c_phi(args.n, Angle(parse_angle(args.phi)), family=args.family,
                        canonical=args.canonical, checkpoint=args.checkpoint)
    else:
        res = max_b_m(args.n, args.m)
    rep["result"] = json.loads(res.to_json())
    rep["results"] = [_num(res.max_value, "brute", "max")]
    _emit(rep, args.format)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import UnknownTheoremError, verify
    rep = _base_report(args, "verify")
    params = {}
    for key in ("n", "m", "phi", "trials", "seed", "t", "angles", "n_max", "d_max"):
        val = getattr(args, key, None)
        if val is not None:
            params[key] = parse_angle(val) if key == "phi" else val
    try:
        result = verify(args.theorem_id, **params)
    except UnknownTheoremError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    rep["id"] = result.theorem_id
    rep["passed"] = result.passed
    rep["wall_time"] = round(result.wall_time, 3)
    rep["results"] = result.rows()
    _emit(rep, args.format)
    return EXIT_OK if result.passed else EXIT_VERIFY_FAIL


def cmd_localcorr(args) -> int:
    from .localcorr import counterexample_experiment, report_to_json
    rep = _base_report(args, "localcorr")
    exp = counterexample_experiment(
        args.n_target, s_sizes=tuple(args.s_size),
        q_seeds=tuple(range(args.q_seeds)), budget=args.budget, seed=args.seed,
        mode=args.mode)
    rep["experiment"] = exp
    if args.format == "json":
        print(json.dumps(rep, sort_keys=True))
    else:
        rep["results"] = [
            {"name": f"delta[{row['strategy']},{row['size']}]", "value": row["delta"],
             "method": "brute" if row["mode"] == "exact" else "monte-carlo"}
            for row in exp.get("probes", [])]
        _emit(rep, args.format)
    return EXIT_OK


def cmd_report(args) -> int:
    """Formula-versus-oracle sweep emitted as CSV or JSON rows."""
    from .closedform import ClosedFormReport
    from .poly import elementary
    rows = []
    for m in args.ms:
        for n in range(1, args.n_max + 1):
            e2 = elementary(n, 2)
            e2e1 = e2 + elementary(n, 1)
            for k in range(1, m):
                ang = Angle(2 * math.pi * k / m)
                for which, poly in (("e2", e2), ("e2+e1", e2e1)):
                    rep = ClosedFormReport(
                        formula="exact-transform",
                        params={"n": n, "m": m, "k": k, "which": which},
                        predicted=e_kphi_symmetric(n, m, k, which),
                        oracle=e_phi(poly, ang))
                    rows.append(rep.row())
    report = {"schema": "1", "command": "report", "seed": args.seed, "results": rows}
    _emit(report, args.format)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "table"), default="table")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED,
                        help=f"seed recorded in reports (default {DEFAULT_SEED})")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                        help="worker threads; results are identical for any count")
    top = argparse.ArgumentParser(
        prog="modcorr",
        description="Correlations of low-degree GF(2) polynomials with mod functions")
    sub = top.add_subparsers(dest="command", required=True)

    def poly_args(sp, need_phi=True):
        sp.add_argument("--poly", required=False, default="0",
                        help="polynomial text, e.g. 'x1*x2 + x3'")
        sp.add_argument("--n", type=int, default=None)
        if need_phi:
            sp.add_argument("--phi", required=True, help="angle: '2pi/3', 'pi/2', or radians")

    sp = sub.add_parser("corr", parents=[common], help="C and E against the complex mod function")
    poly_args(sp)
    sp.add_argument("--symmetric", default=None,
                    help="comma-separated coefficient bits a0,a1,... for the "
                         "weight-class fast path (requires --n)")
    sp.set_defaults(func=cmd_corr)

    sp = sub.add_parser("bcorr", parents=[common], help="correlation with the boolean mod-m function")
    poly_args(sp, need_phi=False)
    sp.add_argument("--m", type=int, required=True)
    sp.set_defaults(func=cmd_bcorr)

    sp = sub.add_parser("contrib", parents=[common], help="directional contribution c_y")
    poly_args(sp)
    sp.add_argument("--y", required=True, help="direction bits, leftmost is x1")
    sp.add_argument("--method", choices=("auto", "product", "enum"), default="auto")
    sp.set_defaults(func=cmd_contrib)

    sp = sub.add_parser("restricted", parents=[common], help="restricted mean contribution and its target")
    poly_args(sp)
    sp.add_argument("--r", required=True, help="cells over 0/1/*, leftmost is x1")
    sp.add_argument("--t", type=int, default=3)
    sp.set_defaults(func=cmd_restricted)

    sp = sub.add_parser("closed-form", parents=[common], help="closed-form values and bounds")
    sp.add_argument("--which", required=True,
                    choices=("e-formula", "max-c", "v", "psi", "symmetric-bound",
                             "real-profile", "balance"))
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, default=3)
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--d", type=int, default=1)
    sp.add_argument("--phi", default="pi/2")
    sp.add_argument("--poly-kind", choices=("e2", "e2+e1"), default="e2")
    sp.set_defaults(func=cmd_closed_form)

    sp = sub.add_parser("search", help="exhaustive family sweeps")
    ssub = sp.add_subparsers(dest="search_cmd", required=True)
    sp_c = ssub.add_parser("max-c", parents=[common])
    sp_c.add_argument("--n", type=int, required=True)
    sp_c.add_argument("--phi", required=True)
    sp_c.add_argument("--family", choices=("quadratic", "cubic-structured"),
                      default="quadratic")
    sp_c.add_argument("--canonical", action="store_true")
    sp_c.add_argument("--checkpoint", default=None)
    sp_c.set_defaults(func=cmd_search)
    sp_b = ssub.add_parser("max-b", parents=[common])
    sp_b.add_argument("--n", type=int, required=True)
    sp_b.add_argument("--m", type=int, required=True)
    sp_b.set_defaults(func=cmd_search)

    sp = sub.add_parser("verify", parents=[common], help="run a named claim check")
    sp.add_argument("theorem_id")
    sp.add_argument("--n", type=int, default=None)
    sp.add_argument("--m", type=int, default=None)
    sp.add_argument("--phi", default=None)
    sp.add_argument("--trials", type=int, default=None)
    sp.add_argument("--t", type=int, default=None)
    sp.add_argument("--angles", type=int, default=None)
    sp.add_argument("--n-max", dest="n_max", type=int, default=None)
    sp.add_argument("--d-max", dest="d_max", type=int, default=None)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("localcorr", parents=[common], help="local-correlation experiment")
    sp.add_argument("--n-target", dest="n_target", type=int, required=True)
    sp.add_argument("--s-size", dest="s_size", type=int, action="append", required=True)
    sp.add_argument("--mode", choices=("auto", "exact", "hybrid"), default="auto")
    sp.add_argument("--q-seeds", dest="q_seeds", type=int, default=8)
    sp.add_argument("--budget", type=int, default=4096)
    sp.set_defaults(func=cmd_localcorr)

    sp = sub.add_parser("report", parents=[common], help="closed-form vs engine sweep table")
    sp.add_argument("--n-max", dest="n_max", type=int, default=12)
    sp.add_argument("--m", dest="ms", type=int, action="append", default=None)
    sp.set_defaults(func=cmd_report)
    return top


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "ms", None) is None and args.command == "report":
        args.ms = [3]
    try:
        return args.func(args)
    except (ParseError, AngleError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetError as exc:
        print(f"budget: {exc} (cap {enum_budget()}; override with MODCORR_MAX_N)",
              file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
