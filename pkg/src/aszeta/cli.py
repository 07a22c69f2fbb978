"""Command-line surface.

Subcommands: analyze, count, lpoly, search, verify.  Exit codes: 0 success,
1 verification failure, 2 parse error, 3 resource budget exceeded,
4 internal invariant violation (including analyze cross-check failures).
Identical invocations print byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import curve as curve_mod, report, zeta
from .errors import (AszetaError, InvariantViolation, ParseError,
                     ResourceBudgetError, UndecidableError)
from .gf import enumeration_budget

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_PARSE = 2
EXIT_BUDGET = 3
EXIT_INVARIANT = 4

ANALYZE_CSV_COLUMNS = ["p", "r", "R", "genus", "h", "q_degree", "s",
                       "classification", "l_form", "l_sign", "predicted_count",
                       "oracle_count", "checks_ok"]
SEARCH_CSV_COLUMNS = ["p", "r", "R", "genus", "h", "q_degree", "s",
                      "classification", "a_constant"]


def _read_input(value):
    """--input takes a file path or inline JSON (anything starting with '{')."""
    if value.lstrip().startswith("{"):
        return value
    if not os.path.exists(value):
        raise ParseError(f"input file not found: {value}")
    with open(value, "r", encoding="utf-8") as fh:
        return fh.read()


def _parse_s_list(value):
    if not value:
        return []
    try:
        return [int(tok) for tok in str(value).replace(" ", "").split(",") if tok]
    except ValueError as exc:
        raise ParseError(f"bad --s list {value!r}") from exc


def _default_jobs(value):
    if value is not None:
        return max(1, int(value))
    return os.cpu_count() or 1


def _csv_cell(v):
    s = json.dumps(v, separators=(",", ":")) if isinstance(v, (list, dict)) else str(v)
    if "," in s or '"' in s:
        s = '"' + s.replace('"', '""') + '"'
    return s


def _print_csv(rows, columns, out):
    out.write(",".join(columns) + "\n")
    for row in rows:
        out.write(",".join(_csv_cell(row.get(c, "")) for c in columns) + "\n")


def _analyze_csv_rows(rep):
    base = {
        "p": rep["spec"]["p"], "r": rep["spec"]["r"],
        "R": rep["spec"]["R"], "genus": rep["genus"], "h": rep["h"],
        "q_degree": rep["q_degree"],
    }
    rows = []
    for entry in rep["per_s"] or [None]:
        row = dict(base)
        if entry is None:
            row.update({"s": "", "classification": "", "l_form": "", "l_sign": "",
                        "predicted_count": "", "oracle_count": "", "checks_ok": ""})
        else:
            lp = entry.get("l_polynomial") or {}
            row.update({
                "s": entry["s"],
                "classification": entry["classification"],
                "l_form": lp.get("form", ""),
                "l_sign": lp.get("sign", ""),
                "predicted_count": entry.get("predicted_count", ""),
                "oracle_count": entry.get("oracle_count", ""),
                "checks_ok": all(v == "pass" or v.startswith("skipped")
                                 for v in entry["checks"].values()),
            })
        rows.append(row)
    return rows


def cmd_analyze(args, out):
    source = _read_input(args.input)
    spec = report.parse_curve_spec(source)
    s_list = _parse_s_list(args.s)
    flags = {"deep_checks": not args.no_deep_checks,
             "budget": enumeration_budget(args.budget)}
    key = report.cache_key(spec, s_list, flags)
    encoded = report.cache_lookup(args.cache, key) if args.cache else None
    if encoded is None:
        rep = report.analyze(spec, s_list, budget=args.budget,
                             jobs=_default_jobs(args.jobs),
                             deep_checks=not args.no_deep_checks)
        encoded = report.encode_exact(rep)
        if args.cache:
            report.cache_append(args.cache, key, encoded)
    if args.format == "csv":
        _print_csv(_analyze_csv_rows(encoded), ANALYZE_CSV_COLUMNS, out)
    else:
        out.write(json.dumps(encoded, separators=(",", ":")) + "\n")
    if encoded["cross_check_failures"]:
        return EXIT_INVARIANT
    return EXIT_OK


def cmd_count(args, out):
    spec = report.parse_curve_spec(_read_input(args.input))
    s_list = _parse_s_list(args.s)
    if len(s_list) != 1:
        raise ParseError("count needs exactly one value in --s")
    s = s_list[0]
    C = report.curve_from_spec(spec)
    n = curve_mod.count_points_oracle(C, s, budget=args.budget,
                                      jobs=_default_jobs(args.jobs))
    p, g = C.p, C.genus
    # Hasse-Weil window, stated exactly: (N - (p^s + 1))^2 <= 4 g^2 p^s
    dev2 = (n - (p**s + 1)) ** 2
    rec = {
        "schema_version": report.SCHEMA_VERSION,
        "spec": spec, "s": s, "count": n,
        "hasse_weil_center": p**s + 1,
        "hasse_weil_radius_squared": 4 * g * g * p**s,
        "within_hasse_weil": dev2 <= 4 * g * g * p**s,
    }
    if args.format == "csv":
        row = {"p": spec["p"], "r": spec["r"], "R": spec["R"], "s": s,
               "count": n, "within_hasse_weil": rec["within_hasse_weil"]}
        _print_csv([row], ["p", "r", "R", "s", "count", "within_hasse_weil"], out)
    else:
        out.write(json.dumps(report.encode_exact(rec), separators=(",", ":")) + "\n")
    return EXIT_OK if rec["within_hasse_weil"] else EXIT_INVARIANT


def cmd_lpoly(args, out):
    spec = report.parse_curve_spec(_read_input(args.input))
    s_list = _parse_s_list(args.s)
    if not s_list:
        raise ParseError("lpoly needs --s")
    C = report.curve_from_spec(spec)
    records = []
    for s in s_list:
        if s % C.q_degree == 0:
            L = zeta.l_polynomial(C, s)
            records.append({
                "s": s, "source": "closed-form",
                "l_polynomial": {"form": L.kind, "sign": L.sign,
                                 "coefficients": list(L.coefficients())},
                "classification": L.classification(),
                "supersingular": L.is_supersingular(),
            })
        else:
            coeffs = zeta.reconstruct_lpoly(C, s, budget=args.budget,
                                            jobs=_default_jobs(args.jobs))
            records.append({
                "s": s, "source": "oracle-reconstruction",
                "l_polynomial": {"form": "reconstructed", "sign": 0,
                                 "coefficients": list(coeffs)},
                "classification": zeta.classify(C, s, budget=args.budget),
                "supersingular": zeta.is_supersingular(coeffs, C.p, s),
            })
    if args.format == "csv":
        rows = [{"p": spec["p"], "r": spec["r"], "R": spec["R"], "s": e["s"],
                 "source": e["source"], "classification": e["classification"],
                 "supersingular": e["supersingular"],
                 "coefficients": e["l_polynomial"]["coefficients"]}
                for e in records]
        _print_csv(rows, ["p", "r", "R", "s", "source", "classification",
                          "supersingular", "coefficients"], out)
    else:
        rec = {"schema_version": report.SCHEMA_VERSION, "spec": spec,
               "l_polynomials": records}
        out.write(json.dumps(report.encode_exact(rec), separators=(",", ":")) + "\n")
    return EXIT_OK


def cmd_search(args, out):
    s_list = _parse_s_list(args.s)
    if len(s_list) != 1:
        raise ParseError("search needs exactly one value in --s")
    rows = []
    stream = report.search_curves(args.p, args.r, args.h, s_list[0],
                                  filter_tag=args.filter, budget=args.budget,
                                  jobs=_default_jobs(args.jobs),
                                  dedup=not args.no_dedup)
    if args.format == "csv":
        for rec in stream:
            rows.append({
                "p": rec["spec"]["p"], "r": rec["spec"]["r"], "R": rec["spec"]["R"],
                "genus": rec["genus"], "h": rec["h"], "q_degree": rec["q_degree"],
                "s": rec["s"], "classification": rec["classification"],
                "a_constant": rec["a_constant"],
            })
        _print_csv(rows, SEARCH_CSV_COLUMNS, out)
    else:
        for rec in stream:
            out.write(json.dumps(report.encode_exact(rec),
                                 separators=(",", ":")) + "\n")
    return EXIT_OK


def cmd_verify(args, out):
    spec = report.parse_curve_spec(_read_input(args.input)) if args.input else None
    results = report.run_verify(preset=args.preset, spec=spec,
                                budget=args.budget, jobs=_default_jobs(args.jobs))
    if args.format == "csv":
        _print_csv(results, ["check", "status"], out)
    else:
        for rec in results:
            out.write(json.dumps(rec, separators=(",", ":")) + "\n")
    if any(r["status"] != "pass" for r in results):
        return EXIT_VERIFY_FAIL
    return EXIT_OK


def build_parser():
    ap = argparse.ArgumentParser(
        prog="aszeta",
        description="Zeta functions and automorphism groups of the curves "
                    "Y^p - Y = X R(X) with R additive, over odd-characteristic "
                    "finite fields; all arithmetic is exact.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, needs_input=True):
        if needs_input:
            sp.add_argument("--input", required=needs_input == "required",
                            help="curve spec: a JSON file path or inline JSON")
        sp.add_argument("--s", default="", help="comma-separated extension degrees")
        sp.add_argument("--budget", type=int, default=None,
                        help="element enumeration budget (default: "
                             "$ASZETA_BUDGET or 10^6)")
        sp.add_argument("--jobs", type=int, default=None,
                        help="worker processes for enumeration (default: all cores)")
        sp.add_argument("--format", choices=["json", "csv"], default="json")
        sp.add_argument("--cache", default=None,
                        help="append-only JSONL results cache (analyze only)")

    sp = sub.add_parser("analyze", help="full pipeline report for one curve")
    common(sp, needs_input="required")
    sp.add_argument("--no-deep-checks", action="store_true",
                    help="skip the Kani-Rosen reconstruction cross-check")
    sp.set_defaults(fn=cmd_analyze)

    sp = sub.add_parser("count", help="brute-force point count over F_{p^s}")
    common(sp, needs_input="required")
    sp.set_defaults(fn=cmd_count)

    sp = sub.add_parser("lpoly", help="L-polynomial (closed form or reconstructed)")
    common(sp, needs_input="required")
    sp.set_defaults(fn=cmd_lpoly)

    sp = sub.add_parser("search", help="enumerate curves of one degree and filter")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--h", type=int, required=True)
    sp.add_argument("--filter", choices=["maximal", "minimal", "all"],
                    default="all")
    sp.add_argument("--no-dedup", action="store_true",
                    help="keep twist-equivalent duplicates")
    common(sp, needs_input=False)
    sp.set_defaults(fn=cmd_search)

    sp = sub.add_parser("verify", help="run the named cross-check battery")
    sp.add_argument("--preset", choices=["paper-examples", "kani-rosen"],
                    default=None)
    sp.add_argument("--input", default=None,
                    help="verify one curve spec instead of a preset")
    sp.add_argument("--s", default="")
    sp.add_argument("--budget", type=int, default=None)
    sp.add_argument("--jobs", type=int, default=None)
    sp.add_argument("--format", choices=["json", "csv"], default="json")
    sp.add_argument("--cache", default=None)
    sp.set_defaults(fn=cmd_verify)
    return ap


def main(argv=None, out=None):
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
        return args.fn(args, out)
    except ParseError as exc:
        pos = f" (position {exc.position})" if exc.position is not None else ""
        print(f"aszeta: parse error: {exc}{pos}", file=sys.stderr)
        return EXIT_PARSE
    except (ResourceBudgetError, UndecidableError) as exc:
        print(f"aszeta: resource budget: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InvariantViolation as exc:
        print(f"aszeta: internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except AszetaError as exc:
        print(f"aszeta: {exc}", file=sys.stderr)
        return EXIT_PARSE


def entry():  # console-script wrapper
    sys.exit(main())


if __name__ == "__main__":
    entry()
