"""Command-line front end.

Every command prints one document: JSON by default, with ``--format csv``
or ``--format md`` for the tabular commands.  Exit codes: 0 when every
verdict passes, 1 when some verdict fails, 2 on usage errors, 3 when an
exact computation produces a non-integral multiplicity.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Any, Optional, Sequence

from . import canonical as cb
from . import enumfib as ef
from . import kodaira as kd
from . import repcheck as rc
from .cyclotomic import Cyclotomic
from .groups import GroupTooLargeError, Representation, enumerate_elements, parse_group

SCHEMA_VERSION = "1.0"

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTEGRALITY = 0, 1, 2, 3

J_ALIASES = {"0": "j0", "j0": "j0", "1728": "j1728", "j1728": "j1728", "generic": "generic"}
ENDO_ALIASES = {
    "q": "Q", "other": "cm_other", "cm_other": "cm_other",
    "gauss": "cm_gauss", "cm_gauss": "cm_gauss",
    "eisenstein": "cm_eisenstein", "cm_eisenstein": "cm_eisenstein",
}


class UsageError(Exception):
    pass


def to_jsonable(obj: Any) -> Any:
    """Rationals become "p/q" strings and cyclotomics {conductor, coeffs}; never floats."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, Cyclotomic):
        return {"conductor": obj.conductor, "coeffs": [to_jsonable(c) for c in obj.coeffs]}
    if isinstance(obj, kd.KodairaType):
        return obj.name
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return [to_jsonable(v) for v in sorted(obj)]
    if isinstance(obj, float):
        raise TypeError("floating point values are not serialized")
    return str(obj)


def verdict(check: str, passed: bool, expected: Any, actual: Any, **extra: Any) -> dict:
    return {"check": check, "pass": bool(passed), "expected": expected, "actual": actual, **extra}


def document(command: str, inputs: dict, results: Any, verdicts: list[dict], warnings: Optional[list] = None) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "results": results,
        "verdicts": verdicts,
    }
    if warnings:
        doc["warnings"] = warnings
    return doc


def exit_code(doc: dict) -> int:
    failed = [v for v in doc["verdicts"] if not v["pass"] and not v.get("waived")]
    return EXIT_FAIL if failed else EXIT_OK


def render_rows(header: Sequence[str], rows: Sequence[Sequence[Any]], fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return buf.getvalue()
    lines = ["| " + " | ".join(header) + " |", "|" + "|".join("---" for _ in header) + "|"]
    lines += ["| " + " | ".join(str(c) for c in row) + " |" for row in rows]
    return "\n".join(lines) + "\n"


# -- commands ----------------------------------------------------------------


def cmd_table(args: argparse.Namespace) -> tuple[dict, Optional[str]]:
    rows = kd.table_rows()
    try:
        kd.self_check()
        ok = True
    except AssertionError:
        ok = False
    results = {
        "columns": list(kd.COLUMN_HEADERS),
        "rows": [{"attribute": name, "values": vals} for name, vals in zip(kd.ROW_HEADERS, rows)],
    }
    doc = document("table", {"name": args.name}, results, [verdict("kodaira_self_check", ok, True, ok)])
    text = None
    if args.format != "json":
        text = render_rows(["Kodaira type", *kd.COLUMN_HEADERS], [[n, *v] for n, v in zip(kd.ROW_HEADERS, rows)], args.format)
    return doc, text


def _parse_group_order(text: str) -> int:
    s = text.lower().removeprefix("mu").removeprefix("_")
    try:
        d = int(s)
    except ValueError:
        raise UsageError(f"invalid group {text!r}; expected one of mu2, mu3, mu4, mu6") from None
    if d not in ef.GROUP_ORDERS:
        raise UsageError(f"invalid group {text!r}; expected one of mu2, mu3, mu4, mu6")
    return d


def _known_key(entry: dict) -> tuple:
    return entry["table"], int(entry["row"]), entry["field"]


def golden_verdicts(d: int, golden_path: Optional[str], allow_known: bool) -> tuple[list[dict], list[str]]:
    report = ef.match_golden(d, golden_path)
    known = {_known_key(e) for e in ef.load_known_discrepancies(golden_path)}
    verdicts = [verdict(f"{report.table}:row_count", report.row_count.match, report.row_count.expected, report.row_count.actual)]
    warnings = []
    for row in report.rows:
        for c in row.checks:
            v = verdict(f"{report.table}:row{row.row}:{c.field}", c.match, to_jsonable(c.expected), to_jsonable(c.actual))
            if not c.match and (report.table, row.row, c.field) in known:
                v["known_discrepancy"] = True
                if allow_known:
                    v["waived"] = True
                    warnings.append(
                        f"{report.table} row {row.row}: {c.field} printed {c.expected}, computed {c.actual} (known discrepancy)"
                    )
            verdicts.append(v)
    return verdicts, warnings


def cmd_enumerate(args: argparse.Namespace) -> tuple[dict, Optional[str]]:
    d = _parse_group_order(args.group)
    try:
        rows = ef.classify(d, args.euler)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    axes = ef.allowed_types(d)
    results = {
        "group_order": d,
        "euler_target": args.euler,
        "axes": [t.name for t in axes],
        "rows": [r.to_dict() for r in rows],
    }
    verdicts = [
        verdict(
            "monodromy_relation",
            all(sum(r.cover.branch_exponents) % d == 0 for r in rows),
            True,
            all(sum(r.cover.branch_exponents) % d == 0 for r in rows),
        )
    ]
    warnings: list[str] = []
    if args.golden:
        if args.euler != ef.K3_EULER:
            raise UsageError("golden tables exist only for --euler 24")
        try:
            gv, warnings = golden_verdicts(d, args.golden_path, args.allow_known_discrepancies)
        except ef.GoldenDataError as exc:
            raise UsageError(str(exc)) from None
        verdicts += gv
    inputs = {"group": f"mu{d}", "euler": args.euler, "format": args.format, "golden": args.golden}
    doc = document("enumerate", inputs, results, verdicts, warnings)
    text = None
    if args.format != "json":
        header = ["No.", *[t.name for t in axes], "g(C)", "Ramification degree", "components", "type A"]
        body = [
            [r.row, *r.config.count_vector(axes), ef.format_genus(r.genus, r.components),
             ef.format_ramification(r.cover.ramification_multiset()), r.components, "yes" if r.type_A else "no"]
            for r in rows
        ]
        text = render_rows(header, body, args.format)
    return doc, text


def cmd_genus(args: argparse.Namespace) -> tuple[dict, Optional[str]]:
    try:
        exps = tuple(int(x) for x in args.exponents.split(",") if x.strip())
        cover = ef.CoverData(args.degree, exps)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    g, c = ef.genus(cover), ef.component_count(cover)
    results = {
        "degree": cover.degree,
        "branch_exponents": list(cover.branch_exponents),
        "ramification": [list(p) for p in cover.ramification_multiset()],
        "genus": g,
        "components": c,
        "genus_display": ef.format_genus(g, c),
    }
    total = sum(exps) % cover.degree
    doc = document(
        "genus",
        {"degree": args.degree, "exponents": list(exps)},
        results,
        [verdict("exponent_sum_mod_degree", total == 0, 0, total)],
    )
    return doc, None


def _parse_group_spec(text: str):
    try:
        return parse_group(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_repcheck(args: argparse.Namespace) -> tuple[dict, Optional[str]]:
    spec = _parse_group_spec(args.group)
    report = rc.verify_fiber_lemma(spec, workers=args.workers)
    diamond = rc.invariant_hodge_diamond(spec)
    profile = rc.invariant_cohomology_profile(spec, diamond)
    base = rc.base_compatibility(spec)
    n = spec.rep_dim
    results = {
        "group": str(spec),
        "order": spec.order,
        "rep_dim": n,
        "fiber_lemma": report.to_dict(),
        "hodge_diamond": diamond,
        "cohomology_profile": profile,
        "base_compatibility": base,
    }
    identity = [[int(i == j) for j in range(n + 1)] for i in range(n + 1)]
    verdicts = [
        verdict("fiber_lemma", report.passed, True, report.passed, first_violation=report.first_violation),
        verdict("hodge_diamond_identity", diamond == identity, identity, diamond),
        verdict("cohomology_profile", profile == rc.expected_profile(n), rc.expected_profile(n), profile),
        verdict("base_compatibility_identity", base == identity, identity, base),
    ]
    return document("repcheck", {"group": str(spec), "workers": args.workers}, results, verdicts), None


def _parse_component(text: str, explicit: bool) -> cb.DiscriminantComponent:
    parts = text.split(":")
    if len(parts) not in (2, 3):
        raise UsageError(f"invalid component {text!r}; expected SOURCE:DEGREE[:M]")
    try:
        source = Fraction(parts[0]) if explicit else kd.parse_kodaira(parts[0])
        degree = int(parts[1])
        m = int(parts[2]) if len(parts) == 3 else None
        return cb.DiscriminantComponent(source, degree, m)
    except ValueError as exc:
        raise UsageError(f"invalid component {text!r}: {exc}") from None


def _parse_lift(text: str) -> ef.FiberConfig:
    try:
        group, row = text.split(":")
        d = _parse_group_order(group)
        idx = int(row.lower().removeprefix("row"))
    except ValueError:
        raise UsageError(f"invalid --lift-from {text!r}; expected e.g. mu3:row1") from None
    configs = ef.enumerate_configs(d)
    if not 1 <= idx <= len(configs):
        raise UsageError(f"row {idx} out of range 1..{len(configs)} for mu{d}")
    return configs[idx - 1]


def cmd_canonical(args: argparse.Namespace) -> tuple[dict, Optional[str]]:
    comps = [_parse_component(c, False) for c in args.component or []]
    comps += [_parse_component(c, True) for c in args.explicit or []]
    inputs: dict[str, Any] = {"dim": args.dim, "component": args.component or [], "explicit": args.explicit or []}
    if args.lift_from:
        cfg = _parse_lift(args.lift_from)
        inputs["lift_from"] = args.lift_from
        if args.dim == 1:
            base = cb.model_from_config(cfg)
        else:
            try:
                base = cb.lift_k3_to_hilb(cfg, args.dim)
            except ValueError as exc:
                raise UsageError(str(exc)) from None
        comps = list(base.components) + comps
    if not comps:
        raise UsageError("give at least one --component, --explicit or --lift-from")
    try:
        model = cb.DiscriminantModel(args.dim, tuple(comps))
        residual = cb.check_canonical_bundle(model)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    results: dict[str, Any] = {
        "base_dim": model.base_dim,
        "components": [
            {"source": to_jsonable(c.source), "degree": c.degree, "monodromy_index": c.monodromy_index,
             "pi_coefficient": c.pi_coefficient}
            for c in model.components
        ],
        "residual": residual,
        "holds": residual == 0,
        "residual_sign": (residual > 0) - (residual < 0),
    }
    verdicts = [verdict("canonical_bundle_formula", residual == 0, Fraction(0), residual)]
    if all(c.monodromy_index is not None for c in model.components):
        cmp = cb.compare_divisors(model)
        results["divisors"] = {
            "verdict": cmp.verdict,
            "components": [
                {"label": c.label, "q": c.q_coefficient, "pi": c.pi_coefficient, "relation": c.relation}
                for c in cmp.components
            ],
        }
        verdicts.append(verdict("D_q_dominates_D_pi", cmp.dominates, True, cmp.dominates))
    else:
        results["divisors"] = None
    return document("canonical", inputs, to_jsonable(results), to_jsonable(verdicts)), None


def cmd_classify(args: argparse.Namespace) -> tuple[dict, Optional[str]]:
    n = args.dim
    if n < 1:
        raise UsageError("--dim must be >= 1")
    if n == 1:
        groups = cb.type_A_groups(1)
        results = {"n": 1, "candidates": [str(g) for g in groups], "note": cb.N1_NOTE}
        return document("classify", {"dim": n}, results, []), None
    res = cb.classify_type_A(n)
    results = {
        "n": n,
        "candidates": [
            {"group": str(v.spec), "label": v.label, "admitted": v.admitted, "reason": v.reason or None}
            for v in res.candidates
        ],
        "admitted": [v.label for v in res.admitted],
        "excluded": [str(v.spec) for v in res.excluded],
    }
    expected_excluded = ["pauli"] if n == 2 else []
    verdicts = [
        verdict("admitted_count", len(res.admitted) == 5, 5, len(res.admitted)),
        verdict("excluded", results["excluded"] == expected_excluded, expected_excluded, results["excluded"]),
    ]
    return document("classify", {"dim": n}, results, verdicts), None


def cmd_ks(args: argparse.Namespace) -> tuple[dict, Optional[str]]:
    if args.tdim is None:
        dims = cb.admissible_transcendental_dims()
        return document("ks", {"admissible": True}, {"admissible_transcendental_dims": sorted(dims)}, []), None
    try:
        dims = cb.ks_partner_dims(args.tdim)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return document("ks", {"tdim": args.tdim}, {"ks_partner_dims": sorted(dims)}, []), None


def cmd_monodromy(args: argparse.Namespace) -> tuple[dict, Optional[str]]:
    if args.j is not None:
        key = J_ALIASES.get(args.j.lower())
        if key is None:
            raise UsageError(f"invalid --j {args.j!r}; expected one of 0, 1728, generic")
        orders = cb.allowed_global_monodromy(key)
        return document("monodromy", {"j": key}, {"global_monodromy_orders": sorted(orders)}, []), None
    key = ENDO_ALIASES.get(args.endo.lower())
    if key is None:
        raise UsageError(f"invalid --endo {args.endo!r}; expected one of Q, other, gauss, eisenstein")
    orders = cb.allowed_local_monodromy(key)
    return document("monodromy", {"endo": key}, {"local_monodromy_indices": sorted(orders)}, []), None


def cmd_groups(args: argparse.Namespace) -> tuple[dict, Optional[str]]:
    spec = _parse_group_spec(args.group)
    elems = enumerate_elements(spec)
    checks = Representation(spec).spot_check(samples=args.samples, seed=args.seed)
    results = {"group": str(spec), "label": spec.label, "order": len(elems), "rep_dim": spec.rep_dim}
    verdicts = [verdict("order", len(elems) == spec.order, spec.order, len(elems))]
    verdicts += [verdict(name, ok, True, ok) for name, ok in checks.items()]
    inputs = {"group": str(spec), "seed": args.seed, "samples": args.samples}
    return document("groups", inputs, results, verdicts), None


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="isofib", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", help="print the Kodaira fiber table")
    p.add_argument("name", choices=["kodaira"])
    p.add_argument("--format", choices=["json", "csv", "md"], default="json")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("enumerate", help="enumerate singular fiber configurations")
    p.add_argument("--group", required=True, help="mu2, mu3, mu4 or mu6")
    p.add_argument("--euler", type=int, default=ef.K3_EULER)
    p.add_argument("--format", choices=["json", "csv", "md"], default="json")
    p.add_argument("--golden", action="store_true", help="compare against the bundled tables")
    p.add_argument("--golden-path", help="directory holding table2.json etc.")
    p.add_argument("--allow-known-discrepancies", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("genus", help="genus of a cyclic cover of P^1")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--exponents", required=True, help="comma separated, e.g. 2,5,5")
    p.set_defaults(func=cmd_genus)

    p = sub.add_parser("repcheck", help="verify the representation lemmas for a group")
    p.add_argument("--group", required=True, help="sym:K, wreath:M:N, pauli, cyclic:M, abelian:M:N")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_repcheck)

    p = sub.add_parser("canonical", help="check the canonical bundle formula on P^n")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--component", action="append", help="TYPE:DEGREE[:M], e.g. I0star:12")
    p.add_argument("--explicit", action="append", help="COEF:DEGREE[:M], coefficient in D_pi, e.g. 1/12:24")
    p.add_argument("--lift-from", help="K3 configuration, e.g. mu3:row1")
    p.set_defaults(func=cmd_canonical)

    p = sub.add_parser("classify", help="type A group classification")
    p.add_argument("--dim", type=int, required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("ks", help="Kuga-Satake partner dimensions")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--tdim", type=int)
    g.add_argument("--admissible", action="store_true")
    p.set_defaults(func=cmd_ks)

    p = sub.add_parser("monodromy", help="allowed monodromy orders")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--j", help="0, 1728 or generic")
    g.add_argument("--endo", help="Q, other, gauss or eisenstein")
    p.set_defaults(func=cmd_monodromy)

    p = sub.add_parser("groups", help="enumerate a group and spot-check its representation")
    p.add_argument("--group", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=50)
    p.set_defaults(func=cmd_groups)
    return parser


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        doc, text = args.func(args)
    except UsageError as exc:
        print(f"isofib {args.command}: error: {exc}", file=stderr)
        return EXIT_USAGE
    except GroupTooLargeError as exc:
        print(f"isofib {args.command}: error: {exc}", file=stderr)
        return EXIT_USAGE
    except rc.NonIntegralMultiplicityError as exc:
        print(f"isofib {args.command}: internal integrality failure: {exc}", file=stderr)
        return EXIT_INTEGRALITY
    doc = to_jsonable(doc)
    if text is None:
        stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        stdout.write(text)
        for v in doc["verdicts"]:
            if not v["pass"]:
                tag = "warning" if v.get("waived") else "FAIL"
                print(f"{tag}: {v['check']}: expected {v['expected']}, got {v['actual']}", file=stderr)
    for w in doc.get("warnings", []):
        if text is None:
            print(f"warning: {w}", file=stderr)
    return exit_code(doc)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
