"""Command-line interface: kernel evaluation, table certification, final check.

Exit codes: 0 success, 1 certification/reproduction failure, 2 usage error.
Outputs are deterministic for a fixed seed and independent of --jobs.
"""

from __future__ import annotations

import argparse
import csv
import json

import os
import sys
from pathlib import Path
from typing import Optional

from . import density, final, tables
from .kernel import LinnikParams, WeightKernel, classic_density_bound
from .supbound import SupCertificate, domination_check

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

EVAL_FUNCTIONS = ("f", "F", "B", "H", "H2", "w1", "w", "C", "classic_density")

TABLE_CSV_COLUMNS = ("table", "label", "lambda1_lo", "lambda1_hi", "lambda_star",
                     "claimed_bound", "computed_C", "published_C", "margin", "certified")
DENSITY_CSV_COLUMNS = ("lambda1", "lambda0", "n0", "lam", "published", "computed", "match")
FINAL_CSV_COLUMNS = ("case", "family", "lambda1_lo", "lambda1_hi", "Lambda",
                     "W", "published_W", "margin", "certified", "reproduces")


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _params_from_args(args) -> LinnikParams:
    kwargs = {}
    if getattr(args, "params", None):
        with open(args.params) as fh:
            kwargs.update(json.load(fh))
    for name in ("L", "K", "theta", "c1", "c2"):
        val = getattr(args, name, None)
        if val is not None:
            kwargs[name] = val
    if getattr(args, "tol", None):
        kwargs["quad_tol"] = args.tol
    return LinnikParams(**kwargs)


def _parse_scalar(text: str) -> Optional[float]:
    if text.lower() in ("inf", "infinity"):
        return None
    return float(text)


def cmd_eval(args) -> int:
    name = args.function
    if name in ("f", "F"):
        if args.gamma is None:
            raise SystemExit("eval f/F requires --gamma")
        kern = WeightKernel(args.gamma)
        if name == "f":
            value = kern.f(args.t)
        else:
            z = complex(args.z[0], args.z[1] if len(args.z) > 1 else 0.0)
            value = kern.F(z)
    elif name == "classic_density":
        value = classic_density_bound(args.lam, args.eps)
    else:
        params = _params_from_args(args)
        if name == "B":
            value = params.B(args.lam)
        elif name == "H2":
            z = complex(args.z[0], args.z[1] if len(args.z) > 1 else 0.0)
            value = params.H2(z)
        elif name == "H":
            z = complex(args.z[0], args.z[1] if len(args.z) > 1 else 0.0)
            value = params.H(z)
        elif name == "w1":
            value = params.w1(args.t)
        elif name == "w":
            value = params.w(_parse_scalar(args.s))
        elif name == "C":
            value = params.C(args.Lambda, _parse_scalar(args.lam_str))
        else:
            raise SystemExit(f"unknown function {name}")
    if args.json:
        if isinstance(value, complex):
            payload = {"re": value.real, "im": value.imag}
        else:
            payload = float(value)
        print(json.dumps({"function": name, "value": payload}, sort_keys=True))
    else:
        if isinstance(value, complex):
            print(f"{value.real!r} {value.imag!r}")
        else:
            print(repr(float(value)))
    return EXIT_OK


def _write_csv(path: Path, columns, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(columns)
        writer.writerows(rows)


def _audit_certificates(audit, seed: int):
    out = []
    for record in audit:
        entry = dict(record)
        prob_rec = record["problem"]
        kern = WeightKernel(prob_rec["gamma"])
        from .supbound import GridSpec, SupProblem
        cert = SupCertificate(
            problem=SupProblem(kern, prob_rec["k1"], prob_rec["k2"], prob_rec["k3"],
                               *prob_rec["s1_box"], *prob_rec["s2_box"]),
            grid=GridSpec(**record["grid"]),
            m0=record["m0"], d1=record["d1"], d2=record["d2"], d3=record["d3"],
            tail=record["tail"], bound=record["bound"])
        entry["domination_sample"] = domination_check(cert, samples=2000, seed=seed)
        out.append(entry)
    return out


def cmd_table(args) -> int:
    n = args.number
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    if n in (12, 13):
        records = [r for r in density.gen_density_tables() if r["table"] == n]
        rows = [[_fmt(r["lambda1"]), _fmt(r["lambda0"]), _fmt(r["n0"]), _fmt(r["lam"]),
                 _fmt(r["published"]), _fmt(r["computed"]), _fmt(r["match"])]
                for r in records]
        _write_csv(outdir / f"table_{n}.csv", DENSITY_CSV_COLUMNS, rows)
        audit = {"table": n, "cells": [
            {k: rec[k] for k in ("lambda1", "lambda0", "n0", "lam", "published",
                                 "computed", "gamma", "parabola", "roots", "match")}
            for rec in records]}
        with open(outdir / f"audit_{n}.json", "w") as fh:
            json.dump(audit, fh, indent=1, sort_keys=True, default=str)
        failures = [r for r in records if r["match"] is False]
        if failures:
            for r in failures:
                print(f"MISMATCH table {n} lambda1={r['lambda1']} lam={r['lam']}: "
                      f"published {r['published']} computed {r['computed']}")
            return EXIT_FAILED
        print(f"table {n}: {len(records)} cells checked, all printed values match")
        return EXIT_OK

    rows, audit = tables.generate_table(n, jobs=args.jobs)
    csv_rows = []
    for r in rows:
        csv_rows.append([
            _fmt(r.table), r.label, _fmt(r.lambda1_lo), _fmt(r.lambda1_hi),
            _fmt(r.lambda_star), _fmt(r.claimed_bound),
            ";".join(repr(c) for c in r.computed_C),
            ";".join(repr(c) for c in r.published_C),
            _fmt(r.margin), _fmt(r.certified),
        ])
    _write_csv(outdir / f"table_{n}.csv", TABLE_CSV_COLUMNS, csv_rows)
    with open(outdir / f"audit_{n}.json", "w") as fh:
        json.dump({"table": n, "seed": args.seed,
                   "certificates": _audit_certificates(audit, args.seed)},
                  fh, indent=1, sort_keys=True)
    bad = [r for r in rows if not (r.certified and r.c_reproduced)]
    if bad:
        for r in bad:
            print(f"FAILED table {n} row {r.label}: certified={r.certified} "
                  f"margin={r.margin:.3e} computed_C={r.computed_C} "
                  f"published_C={r.published_C}")
        return EXIT_FAILED
    print(f"table {n}: {len(rows)} rows certified")
    return EXIT_OK


def cmd_verify_final(args) -> int:
    params = _params_from_args(args)
    report = final.verify_all(params)
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    csv_rows = []
    for res in report.results:
        case = res.case
        csv_rows.append([case.id, case.family, _fmt(case.lambda1_lo),
                         _fmt(case.lambda1_hi), _fmt(case.Lambda), _fmt(res.W),
                         _fmt(case.published_W), _fmt(res.margin),
                         _fmt(res.certified), _fmt(res.reproduces)])
    _write_csv(outdir / "final_report.csv", FINAL_CSV_COLUMNS, csv_rows)
    payload = {
        "parameters": {"L": params.L, "K": params.K, "theta": params.theta,
                       "c1": params.c1, "c2": params.c2, "epsilon": params.epsilon},
        "passed": report.passed,
        "cases": [{
            "id": res.case.id, "family": res.case.family, "W": res.W,
            "published_W": res.case.published_W, "certified": res.certified,
            "reproduces": res.reproduces, "margin": res.margin,
            "terms": res.terms, "schedule": res.schedule,
        } for res in report.results],
    }
    with open(outdir / "final_report.json", "w") as fh:
        json.dump(payload, fh, indent=1, sort_keys=True)
    worst = min(report.results, key=lambda r: r.margin)
    print(f"{len(report.results)} cases, worst margin {worst.margin:.6f} "
          f"(case {worst.case.id}), passed={report.passed}")
    if not report.passed:
        for res in report.results:
            if not res.certified or res.reproduces is False:
                print(f"FAILED case {res.case.id}: W={res.W:.6f} "
                      f"published={res.case.published_W}")
        return EXIT_FAILED
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="linnik",
        description="Certify the zero-free-region and zero-density tables behind "
                    "the least-prime exponent L = 5.2.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate one of the closed-form functions")
    p_eval.add_argument("function", choices=EVAL_FUNCTIONS)
    p_eval.add_argument("--gamma", type=float, help="kernel parameter for f/F")
    p_eval.add_argument("--z", type=float, nargs="+", default=[0.0],
                        help="complex argument: RE [IM]")
    p_eval.add_argument("--t", type=float, default=0.0)
    p_eval.add_argument("--s", type=str, default="0.0", help="real argument or 'inf'")
    p_eval.add_argument("--lambda", dest="lam", type=float, default=1.0)
    p_eval.add_argument("--lambda-str", dest="lam_str", type=str, default="1.0",
                        help="lambda for C; accepts 'inf'")
    p_eval.add_argument("--Lambda", type=float, default=1.29)
    p_eval.add_argument("--eps", type=float, default=0.0)
    for name in ("L", "K", "theta", "c1", "c2"):
        p_eval.add_argument(f"--{name}", type=float)
    p_eval.add_argument("--params", type=str, help="JSON file with parameter overrides")
    p_eval.add_argument("--tol", type=float, help="quadrature tolerance override")
    p_eval.add_argument("--json", action="store_true")
    p_eval.set_defaults(func=cmd_eval)

    p_table = sub.add_parser("table", help="certify one table (2..13)")
    p_table.add_argument("number", type=int, choices=range(2, 14))
    p_table.add_argument("--out", default="out")
    p_table.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    p_table.add_argument("--seed", type=int, default=0)
    p_table.set_defaults(func=cmd_table)

    p_final = sub.add_parser("verify-final", help="run the full W < 1 verification")
    p_final.add_argument("--params", type=str, help="JSON file with L, K, theta, c1, c2")
    p_final.add_argument("--out", default="out")
    p_final.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    p_final.add_argument("--seed", type=int, default=0)
    p_final.add_argument("--tol", type=float, help="quadrature tolerance override")
    p_final.set_defaults(func=cmd_verify_final)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
