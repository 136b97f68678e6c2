"""Batch command line interface: scenario inspection, property suites with
reproducible reports, character tables, and the Gauss-sum table.

Exit codes: 0 all requested checks passed, 1 a check failed, 2 usage or
parse/validation error.  Reports are emitted as JSON and CSV side by side,
byte-identical for identical inputs and seed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import __version__, chidata, checks, epschar, fields, presets, torus
from .errors import ParseError, TamesignError, ValidationError
from .scenario import load

SCENARIO_DIR_ENV = "TAMESIGN_SCENARIO_DIR"


def _resolve_scenario(spec):
    if spec in presets.preset_names():
        return presets.preset(spec)
    candidates = [spec]
    env_dir = os.environ.get(SCENARIO_DIR_ENV)
    if env_dir:
        candidates.append(os.path.join(env_dir, spec))
        candidates.append(os.path.join(env_dir, spec + ".json"))
    for cand in candidates:
        if os.path.exists(cand):
            return load(cand)
    raise ParseError("no preset or readable file named %r" % (spec,))


def _write_json(path, payload):
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _write_csv(path, rows, fieldnames):
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=fieldnames)
        writer.writeheader()
        for row in rows:
            writer.writerow(row)


def _report(records, seed, out_dir, stem):
    records = sorted(records, key=lambda r: (r["check"], r["scenario"]))
    passed = all(r["failures"] == 0 for r in records)
    payload = {
        "tool": "tamesign",
        "version": __version__,
        "seed": seed,
        "passed": passed,
        "checks": records,
    }
    if out_dir:
        os.makedirs(out_dir, exist_ok=True)
        _write_json(os.path.join(out_dir, stem + ".json"), payload)
        rows = [
            {
                "check": r["check"],
                "scenario": r["scenario"],
                "trials": r["trials"],
                "failures": r["failures"],
                "description": r["description"],
            }
            for r in records
        ]
        _write_csv(
            os.path.join(out_dir, stem + ".csv"),
            rows,
            ["check", "scenario", "trials", "failures", "description"],
        )
    for r in records:
        status = "pass" if r["failures"] == 0 else "FAIL"
        scen = (" [" + r["scenario"] + "]") if r["scenario"] else ""
        print("%-4s %s%s: %d/%d" % (status, r["check"], scen, r["trials"] - r["failures"], r["trials"]))
    return passed


def cmd_scenario(args):
    if args.action == "list":
        for name in presets.preset_names():
            sc = presets.preset(name)
            kinds = sorted({sc.cls_root[i].kind for i in sc.gm})
            print("%-24s p=%-2d roots=%-2d %s" % (name, sc.p, sc.nroots, ",".join(kinds)))
        return 0
    sc = _resolve_scenario(args.file)
    print("valid: %s (p=%d, %d roots, depth %s)" % (sc.name, sc.p, sc.nroots, sc.r))
    return 0


def cmd_check(args):
    scenario = args.scenario
    records = checks.run_suite(args.suite, seed=args.seed, trials=args.trials, scenario=scenario)
    passed = _report(records, args.seed, args.out, "report-" + args.suite)
    return 0 if passed else 1


def _gamma_points(sc, spec):
    if spec is None or spec == "enumerate":
        return torus.enumerate_all(sc)
    if spec.startswith("seed:"):
        parts = spec.split(":")
        seed = int(parts[1])
        count = int(parts[2]) if len(parts) > 2 else 20
        import random

        rng = random.Random(seed)
        return [torus.generate(sc, rng) for _ in range(count)]
    raise ParseError("--gamma must be 'enumerate' or 'seed:N[:COUNT]'")


def cmd_eval(args):
    sc = _resolve_scenario(args.scenario)
    pts = _gamma_points(sc, args.gamma)
    rows = []
    for pt in pts:
        row = {"gamma": ",".join(str(v) for v in pt.key())}
        for name in epschar.NAMED:
            row["eps_" + name] = epschar.eps_named(sc, name, pt)
        row["piece_esr"] = epschar.piece_esr(sc, pt)
        row["piece_hyper"] = epschar.piece_hyper(sc, pt)
        row["piece_spinor"] = epschar.piece_spinor(sc, pt)
        row["eps_x"] = epschar.eps_x(sc, pt)
        row["identity_ok"] = int(
            row["eps_x"] == row["eps_sharp_x"] * row["eps_flat"] * row["eps_f"]
        )
        rows.append(row)
    rows.sort(key=lambda r: r["gamma"])
    fieldnames = list(rows[0].keys()) if rows else ["gamma"]
    out = args.out
    base, ext = os.path.splitext(out)
    csv_path = out if ext == ".csv" else base + ".csv"
    json_path = base + ".json"
    _write_csv(csv_path, rows, fieldnames)
    _write_json(json_path, {"scenario": sc.name, "rows": rows})
    bad = [r for r in rows if not r["identity_ok"]]
    print("wrote %s and %s (%d points)" % (csv_path, json_path, len(rows)))
    return 0 if not bad else 1


def cmd_gauss(args):
    rows = []
    for p in (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47):
        n = 1
        while p**n <= args.qmax:
            F = fields.GF(p, n)
            G = chidata.gauss_sum(F)
            hd = True if n == 1 else chidata.hasse_davenport(fields.GF(p), F)
            rows.append(
                {
                    "p": p,
                    "degree": n,
                    "q": p**n,
                    "gauss_re": "%.12f" % G.real,
                    "gauss_im": "%.12f" % G.imag,
                    "square_is_sgn_minus_one": int(
                        chidata.close(G * G, fields.sgn_in(-F.one(), n))
                    ),
                    "lift_relation_ok": int(hd),
                }
            )
            n += 1
    rows.sort(key=lambda r: (r["q"], r["p"]))
    if args.out:
        _write_csv(args.out, rows, list(rows[0].keys()))
        print("wrote", args.out)
    else:
        w = csv.DictWriter(sys.stdout, fieldnames=list(rows[0].keys()))
        w.writeheader()
        for r in rows:
            w.writerow(r)
    ok = all(r["square_is_sgn_minus_one"] and r["lift_relation_ok"] for r in rows)
    return 0 if ok else 1


def build_parser():
    ap = argparse.ArgumentParser(
        prog="tamesign", description="sign-character calculus on residue-field tori"
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("scenario", help="list presets or validate a scenario file")
    ssub = sp.add_subparsers(dest="action", required=True)
    ssub.add_parser("list")
    v = ssub.add_parser("validate")
    v.add_argument("file")

    cp = sub.add_parser("check", help="run a property suite")
    cp.add_argument("--suite", required=True, choices=list(checks.SUITES) + ["all"])
    cp.add_argument("--scenario", default=None, help="preset name or scenario file")
    cp.add_argument("--seed", type=int, default=0)
    cp.add_argument("--trials", type=int, default=None)
    cp.add_argument("--out", default=None, help="directory for the JSON/CSV report")

    ep = sub.add_parser("eval", help="tabulate all character values per point")
    ep.add_argument("--scenario", required=True)
    ep.add_argument("--gamma", default="enumerate", help="'enumerate' or 'seed:N[:COUNT]'")
    ep.add_argument("--out", required=True)

    gp = sub.add_parser("gauss", help="Gauss-sum and lifting-relation table")
    gp.add_argument("--qmax", type=int, default=121)
    gp.add_argument("--out", default=None)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        if args.command == "scenario":
            return cmd_scenario(args)
        if args.command == "check":
            return cmd_check(args)
        if args.command == "eval":
            return cmd_eval(args)
        if args.command == "gauss":
            return cmd_gauss(args)
    except (ParseError, ValidationError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except TamesignError as exc:
        print("check error: %s" % exc, file=sys.stderr)
        return 1
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
