"""Analysis reports: curve-spec parsing, the end-to-end pipeline, exact
JSON serialisation, and the append-only results cache.

Reports are deterministic (equal inputs give byte-identical JSON) and
integer-exact: values above 2^53 are serialised as decimal strings so that
consumers with double-precision JSON parsers cannot corrupt them.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
import warnings
from importlib import resources

import jsonschema

from . import autgrp, curve as curve_mod, gf, zeta
from .errors import (AszetaError, DomainError, InvariantViolation, ParseError,
                     ResourceBudgetError, UndecidableError)
from .gf import embed, is_square, make_field

SCHEMA_VERSION = "1"
_SAFE_INT = 2**53


def _load_schema(name):
    text = resources.files("aszeta.schemas").joinpath(name).read_text()
    return json.loads(text)


CURVE_SPEC_SCHEMA = _load_schema("curve_spec.schema.json")
ANALYSIS_REPORT_SCHEMA = _load_schema("analysis_report.schema.json")


def parse_curve_spec(source):
    """Parse and validate a curve spec from a JSON string or a mapping.

    Raises ParseError with a position (character offset for JSON syntax,
    JSON-pointer-ish path for schema violations).
    """
    if isinstance(source, str):
        try:
            obj = json.loads(source)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", position=exc.pos) from exc
    else:
        obj = source
    try:
        jsonschema.validate(obj, CURVE_SPEC_SCHEMA)
    except jsonschema.ValidationError as exc:
        path = "/".join(str(x) for x in exc.absolute_path)
        raise ParseError(f"spec does not match schema at /{path}: {exc.message}",
                         position=path) from exc
    for i, a in enumerate(obj["R"]):
        if isinstance(a, list) and len(a) != obj["r"]:
            raise ParseError(
                f"coefficient {i} has {len(a)} residues, expected r={obj['r']}",
                position=f"R/{i}")
    return obj


def curve_from_spec(spec):
    return curve_mod.make_curve(spec["p"], spec["r"], spec["R"])


# ---------------------------------------------------------------------------
# exact JSON encoding

def encode_exact(value):
    """Recursively encode a report: big integers become decimal strings."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return value if -_SAFE_INT < value < _SAFE_INT else str(value)
    if isinstance(value, (list, tuple)):
        return [encode_exact(v) for v in value]
    if isinstance(value, dict):
        return {k: encode_exact(v) for k, v in value.items()}
    if isinstance(value, str):
        return value
    raise TypeError(f"cannot serialise {type(value)!r}")  # pragma: no cover


def decode_exact(value):
    """Inverse of encode_exact: only strings that had to be strings (integers
    at or beyond 2^53 in magnitude) are turned back into ints."""
    if isinstance(value, str) and value.lstrip("-").isdigit():
        n = int(value)
        return n if not -_SAFE_INT < n < _SAFE_INT else value
    if isinstance(value, list):
        return [decode_exact(v) for v in value]
    if isinstance(value, dict):
        return {k: decode_exact(v) for k, v in value.items()}
    return value


def report_to_json(report):
    return json.dumps(encode_exact(report), separators=(",", ":"), sort_keys=False)


# ---------------------------------------------------------------------------
# the pipeline

def _lpoly_record(L):
    return {"form": L.kind, "sign": L.sign, "coefficients": list(L.coefficients())}


def analyze(spec, s_list=(), budget=None, jobs=None, deep_checks=True):
    """Run the full pipeline on one curve spec and return the report dict.

    Cross-check failures do not raise; they are collected in
    ``cross_check_failures`` so the caller can both inspect the discrepancy
    and choose an exit status.
    """
    spec = parse_curve_spec(spec)
    C = curve_from_spec(spec)
    failures = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        group = autgrp.build_group_p(C)
    h_order = autgrp.subgroup_h_order(C, budget=budget)
    a_c = zeta.a_constant(C)

    if C.h >= 1:
        try:
            _, exact = zeta.iterated_quotient(C)
            twist_path = {"status": "pass", "equivalent": True, "exact": exact}
        except ResourceBudgetError as exc:
            twist_path = {"status": f"skipped: {exc}"}
        except InvariantViolation as exc:
            twist_path = {"status": f"fail: {exc}"}
            failures.append(f"twist_path: {exc}")
    else:
        twist_path = {"status": "trivial", "equivalent": True, "exact": True}

    kani = "trivial"
    if C.h >= 1:
        if deep_checks:
            try:
                ok, lhs, rhs = zeta.kani_rosen_check(C, budget=budget, jobs=jobs)
                kani = "pass" if ok else "fail"
                if not ok:
                    failures.append(f"kani_rosen: {lhs} != {rhs}")
            except ResourceBudgetError as exc:
                kani = f"skipped: {exc}"
        else:
            kani = "skipped: deep checks disabled"

    supersingular = True
    per_s = []
    for s in sorted(set(int(v) for v in s_list)):
        if s < 1 or s % C.r:
            raise ParseError(f"s={s} must be a positive multiple of r={C.r}",
                             position=f"s/{s}")
        entry = {"s": s, "in_splitting_field": s % C.q_degree == 0,
                 "a_square": None, "l_polynomial": None,
                 "classification": "", "predicted_count": None,
                 "oracle_count": None, "quadric_count": None, "checks": {}}
        F = make_field(C.p, s)
        if entry["in_splitting_field"]:
            entry["a_square"] = is_square(embed(a_c, F))
            L = zeta.l_polynomial(C, s)
            entry["l_polynomial"] = _lpoly_record(L)
            entry["predicted_count"] = L.predicted_count(1)
            entry["classification"] = L.classification()
            if not L.is_supersingular():
                supersingular = False
                failures.append(f"s={s}: L-polynomial is not supersingular")
        else:
            try:
                entry["classification"] = zeta.classify(C, s, budget=budget, jobs=jobs)
            except UndecidableError as exc:
                entry["classification"] = f"undecidable: {exc}"
        try:
            entry["oracle_count"] = curve_mod.count_points_oracle(
                C, s, budget=budget, jobs=jobs)
            entry["quadric_count"] = curve_mod.count_points_quadric(C, s)
            if entry["oracle_count"] != entry["quadric_count"]:
                entry["checks"]["oracle_vs_quadric"] = "fail"
                failures.append(
                    f"s={s}: oracle {entry['oracle_count']} != quadric "
                    f"{entry['quadric_count']}")
            else:
                entry["checks"]["oracle_vs_quadric"] = "pass"
        except ResourceBudgetError:
            entry["quadric_count"] = curve_mod.count_points_quadric(C, s)
            entry["checks"]["oracle_vs_quadric"] = "skipped: budget"
        if entry["predicted_count"] is not None and entry["oracle_count"] is not None:
            if entry["predicted_count"] != entry["oracle_count"]:
                entry["checks"]["predicted_vs_oracle"] = "fail"
                failures.append(
                    f"s={s}: predicted {entry['predicted_count']} != oracle "
                    f"{entry['oracle_count']}")
            else:
                entry["checks"]["predicted_vs_oracle"] = "pass"
        per_s.append(entry)

    report = {
        "schema_version": SCHEMA_VERSION,
        "spec": {"p": spec["p"], "r": spec["r"], "R": spec["R"]},
        "base_field_poly": list(C.base.poly),
        "h": C.h,
        "genus": C.genus,
        "q_degree": C.q_degree,
        "w_dim": len(C.w_basis),
        "splitting_field_poly": list(C.field_q.poly),
        "p_group": {
            "order": group.order(),
            "exponent": C.p,
            "extraspecial": group.is_extraspecial(),
            "center_order": len(group.center()),
        },
        "h_order": h_order,
        "special_full_aut": autgrp.is_special_full_aut(C),
        "a_constant": list(a_c.coeffs),
        "twist_path": twist_path,
        "kani_rosen": kani,
        "supersingular": supersingular,
        "per_s": per_s,
        "cross_check_failures": failures,
    }
    jsonschema.validate(encode_exact(report), ANALYSIS_REPORT_SCHEMA)
    return report


# ---------------------------------------------------------------------------
# search over coefficient tuples

def search_curves(p, r, h, s, filter_tag="all", budget=None, jobs=None,
                  dedup=True):
    """Yield summary records for every additive R of degree p^h over F_{p^r}.

    Coefficient tuples run in odometer order (a_0 fastest); curves whose
    twist constant falls in an already-seen twist class (same splitting
    field) are suppressed when dedup is set.
    """
    if filter_tag not in ("maximal", "minimal", "all"):
        raise DomainError(f"unknown filter {filter_tag!r}")
    base = make_field(p, r)
    q = base.order
    total = q**h * (q - 1)
    limit = gf.enumeration_budget(budget)
    if total > limit:
        raise ResourceBudgetError(
            f"search space of {total} tuples exceeds budget {limit}",
            required=total, budget=limit)
    seen = {}
    for idx in range(total):
        k = idx
        coeff_idx = []
        for _ in range(h):
            coeff_idx.append(k % q)
            k //= q
        coeff_idx.append(k + 1)  # a_h runs over nonzero indices
        coeffs = [list(base.from_index(i).coeffs) for i in coeff_idx]
        C = curve_mod.make_curve(p, r, coeffs)
        a_c = zeta.a_constant(C)
        if dedup:
            bucket = seen.setdefault(C.q_degree, [])
            if any(zeta.twist_equivalent(a_c, prev) for prev in bucket):
                continue
            bucket.append(a_c)
        try:
            tag = zeta.classify(C, s, budget=budget, jobs=jobs)
        except (UndecidableError, DomainError) as exc:
            tag = f"undecidable: {exc}"
        if filter_tag != "all" and tag != filter_tag:
            continue
        rec = {
            "schema_version": SCHEMA_VERSION,
            "spec": {"p": p, "r": r, "R": coeffs},
            "genus": C.genus,
            "h": C.h,
            "q_degree": C.q_degree,
            "s": s,
            "classification": tag,
            "a_constant": list(a_c.coeffs),
        }
        if s % C.q_degree == 0:
            rec["l_polynomial"] = _lpoly_record(zeta.l_polynomial(C, s))
        yield rec


# ---------------------------------------------------------------------------
# verification battery

def _worked_example_checks(budget=None, jobs=None):
    """The built-in worked examples, as named check callables."""
    def hermite_counts():
        for p in (3, 5, 7):
            C = curve_mod.make_curve(p, 1, [0, 1])
            n = curve_mod.count_points_oracle(C, 2, budget=budget, jobs=jobs)
            if n != 1 + p:
                return f"p={p}: count {n} != {1 + p}"
        return None

    def cubic_minimal():
        C = curve_mod.make_curve(3, 1, [0, 1])
        L = zeta.l_polynomial(C, 4)
        n = curve_mod.count_points_oracle(C, 4, budget=budget, jobs=jobs)
        if C.q_degree != 4 or len(C.w_basis) != 2:
            return "splitting data wrong"
        if L.classification() != zeta.MINIMAL or n != 28 or L.predicted_count(1) != 28:
            return f"classification {L.classification()}, count {n}"
        return None

    def twisted_cubic_maximal():
        F9 = make_field(3, 2)
        a1 = next(x for x in gf.enumerate_field(F9) if x * x == -F9.one)
        C = curve_mod.make_curve(3, 2, [[0, 0], list(a1.coeffs)])
        L = zeta.l_polynomial(C, 2)
        n = curve_mod.count_points_oracle(C, 2, budget=budget, jobs=jobs)
        if C.q_degree != 2 or L.classification() != zeta.MAXIMAL or n != 28:
            return f"classification {L.classification()}, count {n}"
        return None

    def manypoints():
        for p, g in ((11, 5), (19, 9)):
            F = make_field(p, 4)
            a = gf.least_nonsquare(F)
            C = curve_mod.make_curve(p, 4, [list(a.coeffs)])
            n = curve_mod.count_points_oracle(C, 4, budget=budget, jobs=jobs)
            want = p**4 + 1 + 2 * g * p**2
            if C.genus != g or n != want:
                return f"p={p}: genus {C.genus}, count {n} != {want}"
        return None

    def group_structure():
        for p, r, coeffs in ((3, 1, [0, 1]), (5, 1, [0, 1]), (3, 1, [0, 0, 1])):
            C = curve_mod.make_curve(p, r, coeffs)
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                G = autgrp.build_group_p(C)  # raises on any structural failure
            if G.order() != p ** (2 * C.h + 1) or not G.is_extraspecial():
                return f"p={p}, R={coeffs}: order {G.order()}"
        return None

    def h_orders():
        for p in (3, 5):
            for coeffs in ([1], [0, 1], [1, 1]):
                C = curve_mod.make_curve(p, 1, coeffs)
                autgrp.subgroup_h_order(C, budget=budget)  # raises on mismatch
        return None

    def quotient_pipeline():
        C = curve_mod.make_curve(3, 1, [0, 1])
        _, _ = zeta.iterated_quotient(C)  # enforces twist-class agreement
        st = zeta.quotient_step(C, C.w_basis[0])
        if st.curve.genus != 1:
            return f"quotient genus {st.curve.genus} != 1"
        return None

    def kani_rosen():
        C = curve_mod.make_curve(3, 1, [0, 1])
        ok, lhs, rhs = zeta.kani_rosen_check(C, budget=budget, jobs=jobs)
        if not ok:
            return f"{lhs} != {rhs}"
        F9 = make_field(3, 2)
        a1 = next(x for x in gf.enumerate_field(F9) if x * x == -F9.one)
        Cm = curve_mod.make_curve(3, 2, [[0, 0], list(a1.coeffs)])
        ok, lhs, rhs = zeta.kani_rosen_check(Cm, budget=budget, jobs=jobs)
        if not ok:
            return f"{lhs} != {rhs}"
        return None

    return [
        ("hermite-quotient-counts", hermite_counts),
        ("cubic-minimal-over-F81", cubic_minimal),
        ("twisted-cubic-maximal-over-F9", twisted_cubic_maximal),
        ("manypoints-11-19", manypoints),
        ("p-group-structure", group_structure),
        ("h-subgroup-orders", h_orders),
        ("quotient-pipeline", quotient_pipeline),
        ("kani-rosen", kani_rosen),
    ]


def _curve_checks(spec, budget=None, jobs=None):
    C = curve_from_spec(parse_curve_spec(spec))

    def counts_agree():
        for s in range(C.r, 5 * C.r, C.r):
            if C.p**s > gf.enumeration_budget(budget):
                break
            a = curve_mod.count_points_oracle(C, s, budget=budget, jobs=jobs)
            b = curve_mod.count_points_quadric(C, s)
            if a != b:
                return f"s={s}: oracle {a} != quadric {b}"
            if (a - (C.p**s + 1)) ** 2 > 4 * C.genus**2 * C.p**s:
                return f"s={s}: Hasse-Weil violated with N={a}"
        return None

    def w_space_consistent():
        curve_mod.w_space(C, C.q_degree)  # raises if the two routes disagree
        return None

    def group_ok():
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            autgrp.build_group_p(C)
        return None

    def b_invariants():
        F = C.field_q
        R = C.R.embed_into(F)
        for c in C.w_elements():
            bp = curve_mod.b_poly(C, c)
            if gf.trace_to_prime(c * R(c)) != 0:
                return f"Tr(cR(c)) != 0 at c={list(c.coeffs)}"
            if bp.b ** C.p - bp.b != c * R(c):
                return f"b identity fails at c={list(c.coeffs)}"
        return None

    return [
        ("oracle-vs-quadric", counts_agree),
        ("w-space-two-routes", w_space_consistent),
        ("p-group-structure", group_ok),
        ("b-polynomial-invariants", b_invariants),
    ]


def run_verify(preset=None, spec=None, budget=None, jobs=None):
    """Run a battery of named checks; returns a list of {check, status} records."""
    if spec is not None:
        checks = _curve_checks(spec, budget=budget, jobs=jobs)
    elif preset in (None, "paper-examples"):
        checks = _worked_example_checks(budget=budget, jobs=jobs)
    elif preset == "kani-rosen":
        checks = [c for c in _worked_example_checks(budget=budget, jobs=jobs)
                  if c[0] == "kani-rosen"]
    else:
        raise DomainError(f"unknown preset {preset!r}")
    results = []
    for name, fn in checks:
        try:
            detail = fn()
        except AszetaError as exc:
            detail = f"{type(exc).__name__}: {exc}"
        results.append({"schema_version": SCHEMA_VERSION, "check": name,
                        "status": "pass" if detail is None else f"fail: {detail}"})
    return results


# ---------------------------------------------------------------------------
# append-only results cache

def cache_key(spec, s_list, flags):
    payload = json.dumps(
        {"spec": spec, "s": sorted(set(int(v) for v in s_list)),
         "flags": flags, "schema_version": SCHEMA_VERSION},
        sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(payload.encode()).hexdigest()


def cache_lookup(path, key):
    if not path or not os.path.exists(path):
        return None
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            rec = json.loads(line)
            if rec.get("key") == key:
                report = rec["report"]
                jsonschema.validate(report, ANALYSIS_REPORT_SCHEMA)
                return report
    return None


def cache_append(path, key, encoded_report):
    """Single-writer append through an atomic whole-file replace."""
    lines = []
    if os.path.exists(path):
        with open(path, "r", encoding="utf-8") as fh:
            lines = [l for l in fh.read().splitlines() if l.strip()]
    lines.append(json.dumps({"key": key, "report": encoded_report},
                            separators=(",", ":")))
    d = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".aszeta-cache-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")
        os.replace(tmp, path)
    except BaseException:  # pragma: no cover
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
