"""Acceptance suite.  Each check prints one PASS/FAIL line; the terminal
summary repeats them all (see conftest.py)."""

import io
import json
import time
from functools import reduce
from fractions import Fraction
from math import gcd

import pytest

from isofib import canonical as cb
from isofib import cli
from isofib import enumfib as ef
from isofib import kodaira as kd
from isofib import repcheck as rc
from isofib.groups import AbelianProduct, Pauli, Symmetric, Wreath

# ---------------------------------------------------------------- criterion 1

GOLDEN = {3: ("table2", 4, 4), 4: ("table3", 10, 7), 6: ("table4", 47, 47)}
TABLE_FIELDS = ("row_count", "row_order", "counts", "ramification", "components")


def cli_doc(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), stdout=out, stderr=err)
    return code, json.loads(out.getvalue())


@pytest.fixture(scope="module")
def golden_runs():
    start = time.perf_counter()
    docs = {d: cli_doc("enumerate", "--group", f"mu{d}", "--golden") for d in GOLDEN}
    return docs, time.perf_counter() - start


def field_verdicts(doc, field):
    return [v for v in doc["verdicts"] if v["check"].split(":")[-1] == field]


def euler_oracle_genus(d, ramification):
    """Per-component genus from chi = d(2 - #branch) + sum gcd(a_i, d)."""
    exps = [a for a, mult in ramification for _ in range(mult)]
    comps = reduce(gcd, exps, d)
    chi = d * (2 - len(exps)) + sum(gcd(a, d) for a in exps)
    assert chi % (2 * comps) == 0
    return 1 - chi // (2 * comps)


@pytest.mark.parametrize("d", sorted(GOLDEN))
@pytest.mark.parametrize("field", TABLE_FIELDS)
def test_c1_table_fields(golden_runs, criterion, d, field):
    docs, _ = golden_runs
    table, n_rows, _ = GOLDEN[d]
    verdicts = field_verdicts(docs[d][1], field)
    bad = [v["check"] for v in verdicts if not v["pass"]]
    ok = bool(verdicts) and not bad
    if field == "row_count":
        ok = ok and verdicts[0]["actual"] == n_rows
    criterion(f"1.{table}.{field}", f"mu{d} {field} matches {table} exactly", ok, f"mismatches: {bad}")


@pytest.mark.parametrize("d", sorted(GOLDEN))
def test_c1_genus_counts(golden_runs, criterion, d):
    docs, _ = golden_runs
    table, n_rows, n_match = GOLDEN[d]
    verdicts = field_verdicts(docs[d][1], "genus")
    matched = sum(v["pass"] for v in verdicts)
    criterion(f"1.{table}.genus", f"mu{d} genus matches on {n_match}/{n_rows} rows", matched == n_match and len(verdicts) == n_rows, f"{matched}/{len(verdicts)}")


def test_c1_mu4_genus_mismatches_flagged(golden_runs, criterion):
    code, doc = golden_runs[0][4]
    failed = [(v["check"], v["expected"], v["actual"]) for v in field_verdicts(doc, "genus") if not v["pass"]]
    want = [("table3:row3:genus", 5, 6), ("table3:row5:genus", 5, 4), ("table3:row8:genus", 5, 2)]
    criterion("1.table3.flagged", "mu4 rows 3, 5, 8 flagged: computed 6, 4, 2 vs printed 5, 5, 5; exit 1", failed == want and code == 1, str(failed))


@pytest.mark.parametrize("d", sorted(GOLDEN))
def test_c1_euler_oracle_confirms_computed_genus(criterion, d):
    bad = [r.row for r in ef.classify(d) if euler_oracle_genus(d, r.cover.ramification_multiset()) != r.genus]
    printed = ef.load_golden(d)
    bad += [f"golden{g.row}" for g in printed.rows if g.oracle_genus != euler_oracle_genus(d, g.ramification)]
    criterion(f"1.oracle.mu{d}", f"mu{d} computed genus confirmed by Euler-characteristic oracle", not bad, str(bad))


def test_c1_runtime(golden_runs, criterion):
    _, elapsed = golden_runs
    criterion("1.runtime", f"golden reproduction for mu3, mu4, mu6 under 1 s ({elapsed:.3f} s)", elapsed < 1.0)


# ---------------------------------------------------------------- criterion 2


def test_c2_mu2(criterion):
    rows = ef.classify(2)
    ok = (
        len(rows) == 1
        and dict(rows[0].config.counts) == {kd.I0star: 4}
        and rows[0].genus == 1
        and rows[0].type_A
        and cb.compare_divisors(cb.model_from_config(rows[0].config)).verdict == "A"
    )
    criterion("2.mu2", "mu2: single configuration 4 x I0*, genus 1, type A", ok)


# ---------------------------------------------------------------- criterion 3


def test_c3_table1_identities(criterion):
    lct_ok = all(1 - kd.lct(t) == Fraction(kd.euler_characteristic(t), 12) for t in kd.SINGULAR_FINITE_TYPES)
    pair_ok = all(kd.euler_characteristic(a) + kd.euler_characteristic(b) == 12 for a, b in kd.STAR_PAIRS)
    try:
        kd.self_check()
        startup = True
    except AssertionError:
        startup = False
    ok = lct_ok and pair_ok and startup and len(kd.SINGULAR_FINITE_TYPES) == 7
    criterion("3.table1", "1 - lct = e/12 and star pairs sum to 12 on all 7 types; self-check passes", ok)


# ---------------------------------------------------------------- criterion 4

PASSING_GROUPS = (
    [Symmetric(k) for k in range(3, 7)]
    + [Wreath(m, n) for m in (2, 3, 4, 6) for n in (2, 3)]
    + [Wreath(2, 4), Pauli]
)


@pytest.mark.parametrize("spec", PASSING_GROUPS, ids=str)
def test_c4_fiber_lemma(criterion, spec):
    report = rc.verify_fiber_lemma(spec)
    diamond = rc.invariant_hodge_diamond(spec)
    profile = rc.invariant_cohomology_profile(spec, diamond)
    ok = report.passed and rc.is_identity_matrix(diamond) and profile == rc.expected_profile(spec.rep_dim)
    criterion(f"4.{spec}", f"{spec}: lemma passes, invariant diamond = identity, profile (1,0,1,...)", ok, str(report.first_violation))


@pytest.mark.parametrize("spec", [AbelianProduct(m, n) for m in (2, 3, 4, 6) for n in (2, 3)], ids=str)
def test_c4_abelian_control_fails_at_k1(criterion, spec):
    report = rc.verify_fiber_lemma(spec)
    v = report.first_violation or {}
    ok = not report.passed and v.get("check") == "simple" and v.get("k") == 1
    criterion(f"4.{spec}.fails", f"{spec}: lemma fails at k = 1", ok, str(v))


@pytest.mark.parametrize("spec", [AbelianProduct(m, n) for m in (2, 3, 4, 6) for n in (2, 3)], ids=str)
def test_c4_abelian_control_multiplicity_two(criterion, spec):
    v = rc.verify_fiber_lemma(spec).first_violation or {}
    criterion(f"4.{spec}.mult", f"{spec}: k = 1 self-product equals 2", v.get("value") == 2, f"got {v.get('value')}")


@pytest.mark.parametrize("spec", [Wreath(6, 3), Wreath(6, 4)], ids=str)
def test_c4_largest_runs(criterion, spec):
    rc.clear_caches()
    start = time.perf_counter()
    report = rc.verify_fiber_lemma(spec)
    elapsed = time.perf_counter() - start
    ok = report.passed and elapsed < 60 and len(rc.group_table(spec)) == spec.order
    criterion(f"4.{spec}.time", f"{spec} (order {spec.order}) passes in < 60 s ({elapsed:.1f} s)", ok)


# ---------------------------------------------------------------- criterion 5

EXACTNESS_GROUPS = PASSING_GROUPS + [AbelianProduct(m, n) for m in (2, 3, 4, 6) for n in (2, 3)]


@pytest.mark.parametrize("spec", EXACTNESS_GROUPS, ids=str)
def test_c5_inner_products_are_nonnegative_integers(criterion, spec):
    chars = list(rc.exterior_powers(spec)) + [rc.trivial_character(spec)]
    bad = []
    for a in chars:
        for b in chars:
            s = rc.character_sum(a, b)
            q = s.coeffs[0] / spec.order
            if not s.is_rational() or q.denominator != 1 or q < 0:
                bad.append(str(s))
    criterion(f"5.{spec}", f"{spec}: all {len(chars) ** 2} inner products are nonnegative integers", not bad, str(bad[:3]))


def test_c5_cli_never_exits_3(criterion):
    codes = {str(spec): cli.run(["repcheck", "--group", str(spec)], stdout=io.StringIO(), stderr=io.StringIO())
             for spec in EXACTNESS_GROUPS}
    criterion("5.cli", "repcheck over every tested group never exits 3", 3 not in codes.values(), str(codes))


@pytest.mark.parametrize("spec", [Pauli, Symmetric(5), Wreath(3, 3), Wreath(4, 2)], ids=str)
def test_c5_parallel_matches_sequential(criterion, spec):
    chars = rc.exterior_powers(spec)
    same = True
    for a in chars:
        for b in chars:
            seq, par = rc.character_sum(a, b), rc.character_sum(a, b, workers=3)
            same = same and seq == par and seq._key == par._key
    report_par = rc.verify_fiber_lemma(spec, workers=2).to_dict()
    same = same and report_par == rc.verify_fiber_lemma(spec).to_dict()
    criterion(f"5.parallel.{spec}", f"{spec}: parallel and sequential reductions bit-identical", same)


# ---------------------------------------------------------------- criterion 6

ALL_CONFIGS = [cfg for d in ef.GROUP_ORDERS for cfg in ef.enumerate_configs(d)]


def test_c6_config_count(criterion):
    criterion("6.count", "62 K3 configurations across mu2, mu3, mu4, mu6", len(ALL_CONFIGS) == 62, str(len(ALL_CONFIGS)))


def test_c6_canonical_bundle_residuals(criterion):
    residuals = [cb.check_canonical_bundle(cb.model_from_config(cfg)) for cfg in ALL_CONFIGS]
    residuals += [cb.check_canonical_bundle(cb.lift_k3_to_hilb(cfg, n)) for n in range(2, 7) for cfg in ALL_CONFIGS]
    ok = len(residuals) == 372 and all(r == 0 for r in residuals)
    criterion("6.cbf", f"residual 0 on {len(residuals)} models (n = 1 and Hilbert lifts n = 2..6)", ok)


def test_c6_all_I0star_degree(criterion):
    got = [cb.discriminant_degree_all_I0star(n) for n in range(1, 11)]
    criterion("6.degree", "all-I0* discriminant degree is 2(n+1) for n = 1..10", got == [2 * (n + 1) for n in range(1, 11)], str(got))


def test_c6_verdict_agrees_with_type_A(criterion):
    bad = [str(c) for c in ALL_CONFIGS if (cb.compare_divisors(cb.model_from_config(c)).verdict == "A") != ef.is_type_A(c)]
    criterion("6.verdict", "compare_divisors verdict agrees with is_type_A on all 62", not bad, str(bad))


def test_c6_all_star_iff_genus_one(criterion):
    bad = [
        str(c) for c in ALL_CONFIGS
        if all(kd.is_star_type(t) for t in c.fibers()) != (ef.genus(ef.to_cover(c)) == 1)
    ]
    criterion("6.biconditional", "all fibers star type iff per-component genus 1, on all 62", not bad, str(bad))


# ---------------------------------------------------------------- criterion 7


def test_c7_type_A_classification(criterion):
    res = cb.classify_type_A(2)
    labels = {(str(v.spec), v.label) for v in res.admitted}
    want = {("sym:3", "Kum_2")} | {(f"wreath:{m}:2", "K3^[2]") for m in (2, 3, 4, 6)}
    pauli = [v for v in res.candidates if v.spec == Pauli]
    ok = labels == want and len(pauli) == 1 and not pauli[0].admitted and len(res.candidates) == 6
    criterion("7.classify", "classify_type_A(2): Kum_2 and four K3^[2]; Pauli listed then excluded", ok, str(labels))


def test_c7_kuga_satake(criterion):
    ok = cb.ks_partner_dims(5) == {4, 8} and cb.admissible_transcendental_dims() == {3, 4}
    criterion("7.ks", "ks_partner_dims(5) = {4, 8}; admissible transcendental dims = {3, 4}", ok)


def test_c7_monodromy_tables(criterion):
    glob = {j: cb.allowed_global_monodromy(j) for j in cb.J_CLASSES}
    local = {e: cb.allowed_local_monodromy(e) for e in cb.ENDO_FIELDS}
    ok = (
        glob == {"j0": {2, 3, 6}, "j1728": {2, 4}, "generic": {2}}
        and set().union(*local.values()) == {2, 3, 4, 6}
        and local["Q"] == local["cm_other"] == {2}
        and local["cm_gauss"] == {2, 4}
        and local["cm_eisenstein"] == {2, 3, 6}
    )
    criterion("7.monodromy", "global and local monodromy tables", ok, f"{glob} {local}")
