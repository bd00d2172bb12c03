"""One test per acceptance criterion; each records a PASS/FAIL line for the terminal summary.

Criteria that cannot be met are strict xfails: the summary line says FAIL,
and the run stays green only while the failure is exactly the documented one.
"""

from __future__ import annotations

import time
from itertools import product

import pytest
from conftest import record

from chaincode import additive as ad
from chaincode import census as cz
from chaincode import counting as ct
from chaincode import mixedcode as mc
from chaincode.mixedcode import CodeType, MixedAmbient
from chaincode.ringcore import EisensteinParams, all_elements
from test_additive import TABLE_ONE, build
from test_counting import brute_lcd, brute_sigma

Z9Z3_22 = MixedAmbient(3, 2, 2, 2)
Z9Z3_33 = MixedAmbient(3, 2, 3, 3)
Z4Z2_22 = MixedAmbient(2, 2, 2, 2)
Z27Z9_22 = MixedAmbient(3, 3, 2, 2)
Z27Z9_33 = MixedAmbient(3, 3, 3, 3)
Z81Z27_22 = MixedAmbient(3, 4, 2, 2)


def timed(fn, *args, **kw):
    t = time.perf_counter()
    out = fn(*args, **kw)
    return out, time.perf_counter() - t


def nonzero_so(a):
    rep, secs = timed(cz.census_count, a, "so")
    return rep.total - 1, ct.count_so_total(a.p, a.mu, a.n1, a.n2) - 1, secs


def test_criterion_1_self_orthogonal_e2():
    c22, f22, t22 = nonzero_so(Z9Z3_22)
    c33, f33, t33 = nonzero_so(Z9Z3_33)
    ok = (c22, f22, c33, f33) == (5, 5, 2635, 2635) and t22 < 1 and t33 < 60
    record("1", ok, f"Z9Z3 (2,2): census {c22}, formula {f22} ({t22:.2f}s); (3,3): census {c33}, formula {f33} ({t33:.2f}s)")
    assert ok


def test_criterion_2_self_dual():
    r1, t1 = timed(cz.census_count, MixedAmbient(5, 2, 2, 2), "sd")
    r2, t2 = timed(cz.census_count, MixedAmbient(5, 3, 2, 2), "sd")
    f1, f2 = ct.count_sd_total(5, 2, 2, 2), ct.count_sd_total(5, 3, 2, 2)
    ok = (r1.total, f1, r2.total, f2) == (22, 22, 172, 172) and max(t1, t2) < 60
    record("2", ok, f"Z25Z5: census {r1.total}, formula {f1}; Z125Z25: census {r2.total}, formula {f2} ({t2:.2f}s)")
    assert ok


@pytest.mark.xfail(strict=True, reason="census and closed form agree on 211 non-zero codes, not 499; see decisions ledger")
def test_criterion_3_self_orthogonal_e3():
    c, f, secs = nonzero_so(Z27Z9_22)
    ok = c == 499 and f == 499 and secs < 60
    record("3", ok, f"Z27Z9 (2,2): census {c}, formula {f} non-zero ({secs:.2f}s); expected 499")
    assert ok


def test_criterion_3_closed_form_at_3_3():
    # the (3,3) value is only reachable by the closed form outside the extended tier
    f = ct.count_so_total(3, 3, 3, 3) - 1
    record("3-formula", f == 2064151, f"Z27Z9 (3,3) closed form {f} non-zero; census in the extended tier")
    assert f == 2064151


@pytest.mark.extended
def test_criterion_3_extended_census():
    c, f, secs = nonzero_so(Z27Z9_33)
    ok = c == f == 2064151
    record("3-extended", ok, f"Z27Z9 (3,3): census {c}, formula {f} ({secs:.0f}s)")
    assert ok


def test_criterion_4_self_orthogonal_e4():
    rep, secs = timed(cz.census_count, Z81Z27_22, "so")
    sel = cz.select_theta_variant()
    t = cz.ORACLE_TYPE
    printed = ct.lift_count_value(4, t.ks, t.ls, 2, 2, 3, "printed")
    chosen = ct.lift_count_value(4, t.ks, t.ls, 2, 2, 3, sel.selected)
    census48 = rep.by_type.get(t)
    ok = (
        rep.total - 1 == 1065
        and secs < 600
        and printed.denominator != 1
        and sel.lift_count == census48 == chosen == 48
    )
    record(
        "4",
        ok,
        f"Z81Z27 (2,2): census {rep.total - 1} non-zero ({secs:.2f}s); type {t}: census {census48}, "
        f"lift oracle {sel.lift_count}, printed {printed}, {sel.selected} {chosen}",
    )
    assert ok


@pytest.mark.xfail(strict=True, reason="closed-form e=4 total is 810 under the selected variant, census 1066; see decisions ledger")
def test_criterion_4_closed_form_total():
    f = cz.formula_value(Z81Z27_22, "self_orthogonal")
    ok = f == 1066
    record("4-formula", ok, f"Z81Z27 (2,2) closed form {f} (with zero code) under the selected variant; census 1066")
    assert ok


def test_criterion_5_lcd():
    out = []
    t = time.perf_counter()
    for a, expected in ((Z4Z2_22, 113), (Z9Z3_22, 883)):
        census = cz.census_count(a, "lcd").total
        formula = ct.count_lcd_mixed(a.n1, a.n2, a.p, a.mu)
        out.append((census, formula, expected))
    secs = time.perf_counter() - t
    # the zero code is LCD and is the one trivial code left out of 113 and 883
    ok = mc.is_lcd(mc.zero_code(Z4Z2_22)) and all(c - 1 == e and f == c for c, f, e in out) and secs < 5
    record("5", ok, "; ".join(f"census {c} (without the zero code: {c - 1}), formula {f}" for c, f, _ in out) + f" ({secs:.2f}s)")
    assert ok


def test_criterion_6_classification():
    so22 = cz.classify(Z9Z3_22, "so")
    so33, secs = timed(cz.classify, Z9Z3_33, "so")
    lcd9 = cz.classify(Z9Z3_22, "lcd")
    lcd4 = cz.classify(Z4Z2_22, "lcd")
    got = [r.weight_split() for r in (so22, so33, lcd9, lcd4)]
    want = [{9: 2, 18: 1}, {9: 19, 18: 97, 27: 1}, {6: 114, 9: 48, 12: 38, 15: 3}, {2: 45, 4: 14, 6: 2}]
    counts = [r.count for r in (so22, so33, lcd9, lcd4)]
    ok = got == want and counts == [3, 117, 203, 61] and secs < 600
    record("6", ok, f"orbits {counts}, splits {got}; (3,3) in {secs:.1f}s")
    assert ok


def test_criterion_7_table_one():
    R2 = EisensteinParams(2, 2, 1, 2, 1)
    bad = []
    for i, (rows, n, m, d, pred) in enumerate(TABLE_ONE):
        C = build(R2, rows)
        row_ok = (C.n, C.cardinality(), ad.hom_distance(C)) == (n, m, d) and ad.plotkin_achieved(2, n, m, d)
        if pred == "so":
            row_ok &= ad.is_self_orthogonal(C)
        if pred == "lcd":
            row_ok &= ad.is_acd(C)
        if not row_ok:
            bad.append(i)
    record("7", not bad, f"{len(TABLE_ONE) - len(bad)}/{len(TABLE_ONE)} rows reproduce (N, M, d_hom), the Plotkin check and the marked predicate")
    assert not bad


def _dual_type(t: CodeType, a: MixedAmbient) -> CodeType:
    return CodeType((a.n1 - sum(t.ks),) + tuple(reversed(t.ks[1:])), (a.n2 - sum(t.ls),) + tuple(reversed(t.ls[1:])))


def _perp(A, B, p):
    return all(sum(x * y for x, y in zip(u, v)) % p == 0 for u in A for v in B)


def test_criterion_8_property_suites():
    t0 = time.perf_counter()
    failures = []
    for a in (Z9Z3_22, Z4Z2_22):
        total = a.p**a.log_size
        for C in cz.enumerate_codes(a):
            D = mc.dual(C)
            if mc.dual(D) != C or mc.cardinality(C) * mc.cardinality(D) != total:
                failures.append(("duality", a, C))
            if mc.type_of(D) != _dual_type(mc.type_of(C), a):
                failures.append(("dual type", a, C))
            if mc.is_self_orthogonal(C) != mc.contains(D, C):
                failures.append(("diamond", a, C))
    for a in (Z9Z3_22, Z27Z9_22):
        for C in cz.enumerate_codes(a, self_orthogonal_only=True):
            X = {i: mc.torsion(C, i, "X") for i in range(1, a.mu + 1)}
            Y = {i: mc.torsion(C, i, "Y") for i in range(1, a.mu)}
            if not all(_perp(X[i], X[j], a.p) for i in X for j in X if i + j <= a.mu + 1):
                failures.append(("torsion X", a, C))
            if not all(_perp(Y[i], Y[j], a.p) for i in Y for j in Y if i + j <= a.mu):
                failures.append(("torsion Y", a, C))
    R3 = EisensteinParams(3, 2, 1, 2, 1)
    universe = [tuple(w) for w in product(list(all_elements(R3)), repeat=2)]
    for img in cz.enumerate_codes(ad.image_ambient(R3, 2)):
        C = ad.AdditiveCode(R3, 2, img)
        gens = [ad.unpack_word(R3, 2, g) for g in img.generators()]
        direct = {w for w in universe if all(ad.chi_orthogonal(w, g) for g in gens)}
        if set(ad.chi_dual(C).words()) != direct:
            failures.append(("psi transport", R3, img))
    for q in (3, 5):
        for n in range(1, 5):
            for s in range(n + 1):
                if ct.sigma(n, s, q) != brute_sigma(n, s, q):
                    failures.append(("sigma", q, n, s))
    for p in (2, 3, 5):
        for n in range(1, 5):
            for s in range(n + 1):
                if ct.lcd_field_count(n, s, p) != brute_lcd(n, s, p):
                    failures.append(("L_p", p, n, s))
    secs = time.perf_counter() - t0
    ok = not failures and secs < 120
    record("8", ok, f"{len(failures)} property failures across all suites ({secs:.1f}s)")
    assert ok, failures[:5]


def test_criterion_9_nonexistence():
    rows = []
    for a in (Z9Z3_22, Z9Z3_33):
        exists = ct.sd_exists_mixed(a.p, a.mu, a.n1, a.n2)
        census = cz.census_count(a, "sd").total
        rows.append((a, exists, census))
    ok = all(not e and c == 0 for _, e, c in rows)
    record("9", ok, "; ".join(f"{a.label()}: sd_exists {e}, census {c}" for a, e, c in rows))
    assert ok
