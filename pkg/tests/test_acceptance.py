"""Acceptance criteria 1-10, one PASS/FAIL line per criterion.

Run under pytest (the lines are repeated in the terminal summary) or directly:
    python tests/test_acceptance.py
Results are exact; the only pinned quantities are wall-clock limits in seconds.
"""

from __future__ import annotations

import math
import time

import numpy as np
import pytest

from finalg.exactalg import CoeffVec, enumerate_span, submodule_from
from finalg.expr import DihedralExpr, EndAb, Fq, GroupRing, Matrix, Product, TruncPoly, UpperTriangular, Zmod
from finalg.groups import (center, cyclic, dihedral, direct_product, gl2, holomorph, is_dihedral_product,
                           is_isomorphic, normal_subgroups, quaternion8, relabeled, sl2, symmetric,
                           verify_isomorphism)
from finalg.rings import build_ring, check_ring_axioms, jacobson_radical, one_plus, units
from finalg.verifier import (SL23Frame, cube_identity, square_identity, uc_expected_order, verify_char0_obstruction,
                             verify_hol_facts, verify_hurwitz, verify_sl23_char2, verify_sl23_char4,
                             verify_sl23_choice, verify_sl_facts, verify_theorem_neat, verify_uc,
                             verify_units_table)

# wall-clock limits in seconds; criteria 4, 6 and 10 state none, so these are chosen here
LIMITS = {1: 30.0, 2: 10.0, 3: 10.0, 4: 20.0, 5: 20.0, 6: 10.0, 7: 60.0, 8: 60.0, 9: 1.0, 10: 120.0}

RESULTS: list[str] = []


def record(n: int, ok: bool, elapsed: float, detail: str) -> None:
    within = elapsed < LIMITS[n]
    status = "PASS" if ok and within else "FAIL"
    line = f"[criterion {n:2d}] {status}  {detail}  ({elapsed:.2f} s, limit {LIMITS[n]:.0f} s)"
    RESULTS.append(line)
    print(line)
    assert ok, detail
    assert within, f"criterion {n} took {elapsed:.2f} s, limit {LIMITS[n]} s"


def timed(fn, *args):
    t0 = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - t0


def _cases(report):
    return [w for w in report.witnesses if "case" in w]


def test_criterion_01_units_table():
    report, dt = timed(verify_units_table)
    rows = _cases(report)
    ring_rows = [w for w in rows if w["ring"] != "{0}"]
    ok_rings = sum(w["ok"] for w in ring_rows)
    zero_row = [w for w in rows if w["ring"] == "{0}"]
    largest = max(w["ring_order"] for w in ring_rows)
    ok = report.passed and ok_rings == len(ring_rows) == 14 and len(zero_row) == 1 and zero_row[0]["ok"]
    record(1, ok, dt, f"{ok_rings}/14 ring rows with stated characteristic and units = Hol(Z_n); "
                      f"zero-ring literal ok; largest ring {largest} elements")


def test_criterion_02_char2():
    report, dt = timed(verify_sl23_char2)
    cases = _cases(report)
    lemmas = {w["lemma"]: w for w in report.witnesses if "lemma" in w and "ok" in w}
    a_ok = lemmas["A^8 = 1"]["ok"] and 8 % lemmas["A^8 = 1"]["order"] == 0
    b_ok = lemmas["B^8 = 1"]["ok"] and 8 % lemmas["B^8 = 1"]["order"] == 0
    non_inj = sum(not w["injective"] for w in cases)
    witnessed = all(w["witness"] is not None and len(w["witness"]) == 2 for w in cases)
    ok = report.passed and a_ok and b_ok and len(cases) == 64 and non_inj == 64 and witnessed
    record(2, ok, dt, f"A^8 = B^8 = 1; {non_inj}/64 ideals (A+x, B+y) non-injective, each with a witness pair")


def test_criterion_03_char4():
    report, dt = timed(verify_sl23_char4)
    cases = _cases(report)
    F = SL23Frame()
    sq, cube = square_identity(F), cube_identity(F, F.c)
    good = sum(not w["injective"] and w["two_r_minus_two_in_ideal"] for w in cases)
    ok = report.passed and sq["modulo_1+i^2"] and cube["modulo_1+i^2_and_2r-2"] and len(cases) == good == 18
    record(3, ok, dt, f"(i+j+k)^2 = 1 mod (1+i^2); x^3 identity mod (1+i^2, 2r-2); {good}/18 derived cases "
                      f"non-injective with 2r-2 in I for all r [literal coefficient-exact reading: "
                      f"square {sq['exact']}, cube {cube['exact']}; see xfail below]")


@pytest.mark.xfail(strict=True, reason="both identities fail as exact coefficient identities in Z4[G]; "
                                       "they hold modulo the ideal the derivation works in")
def test_criterion_03_literal_exact_identities():
    F = SL23Frame()
    assert square_identity(F)["exact"] and cube_identity(F, F.c)["exact"]


def test_criterion_04_choice_independence():
    report, dt = timed(verify_sl23_choice)
    cases = _cases(report)
    same = sum(w["ok"] for w in cases)
    ok = report.passed and len(cases) == same == 64 + 18
    F1 = SL23Frame("alternative")
    record(4, ok, dt, f"{same}/82 per-case outcomes identical with alternative c = {F1.label(F1.c)}")


def test_criterion_05_sl_facts():
    t0 = time.perf_counter()
    report = verify_sl_facts()
    centers = {q: center(sl2(q)).order for q in (2, 3, 4, 5, 7, 8, 9)}
    ok_centers = all(centers[q] == math.gcd(2, q - 1) for q in centers)

    def proper(G):
        return sorted(N.order for N in normal_subgroups(G) if 1 < N.order < G.order)

    ok_normal = (proper(sl2(2)) == [3] and proper(sl2(3)) == [2, 8] and proper(gl2(3)) == [2, 8, 24]
                 and proper(sl2(5)) == [2])
    dt = time.perf_counter() - t0
    record(5, report.passed and ok_centers and ok_normal, dt,
           f"center orders {centers}; proper normal subgroups C3 | C2,Q8 | C2,Q8,SL2(F3) | C2; "
           f"self-centralizing C8 in SL2(F7)")


def test_criterion_06_uc():
    t0 = time.perf_counter()
    report = verify_uc((3, 5, 7, 9, 11, 13))
    arith = verify_char0_obstruction((17, 23, 31), construct_max=0)
    eight = sorted(q for q in (3, 5, 7, 9, 11, 13) if uc_expected_order(q) % 8 == 0)
    dt = time.perf_counter() - t0
    ok = report.passed and arith.passed and eight == [7, 9]
    record(6, ok, dt, f"UC(q) cyclic of order q-+1 and self-centralizing for q in 3..13; 8 | |UC| for q in "
                      f"{eight} (listed as {{7}}; 9 - 1 = 8, see xfail below); arithmetic ok for 17, 23, 31")


@pytest.mark.xfail(strict=True, reason="|UC(F_9)| = 8, so the set of q in 3..13 with 8 | |UC(F_q)| is {7, 9}")
def test_criterion_06_literal_divisibility_set():
    assert sorted(q for q in (3, 5, 7, 9, 11, 13) if uc_expected_order(q) % 8 == 0) == [7]


def test_criterion_07_hol_facts():
    report, dt = timed(verify_hol_facts)
    facts = {}
    for w in _cases(report):
        facts.setdefault(w["fact"], []).append(w["ok"])
    ok = report.passed and all(all(v) for v in facts.values())
    record(7, ok, dt, f"{report.cases_examined}/{report.cases_total} holomorph facts "
                      f"(centers to n=100, coprime splits, normal 2-subgroups for n in 6,10,12,14,20,28)")


def test_criterion_08_neat():
    t0 = time.perf_counter()
    report = verify_theorem_neat(100, 24)
    arith = all((12 % n == 0) == (48 % (n * sum(math.gcd(k, n) == 1 for k in range(1, n + 1))) == 0)
                for n in range(1, 101))
    dihedral_ok = True
    for n in range(1, 25):
        combo = is_dihedral_product(holomorph(n))
        dihedral_ok &= (12 % n == 0) == (combo is not None)
    combos = {n: is_dihedral_product(holomorph(n)) for n in (1, 2, 3, 4, 6, 12)}
    witnesses_ok = (combos[1] == [] and combos[2] == [2] and combos[3] == [6] and combos[4] == [8]
                    and sorted(combos[6]) in ([2, 6], [12]) and sorted(combos[12]) == [6, 8])
    dt = time.perf_counter() - t0
    record(8, report.passed and arith and dihedral_ok and witnesses_ok, dt,
           f"n | 12 iff n phi(n) | 48 for n <= 100; iff dihedral product for n <= 24; witnesses {combos}")


def test_criterion_09_hurwitz():
    report, dt = timed(verify_hurwitz)
    record(9, report.passed and report.cases_examined == 3, dt,
           "24 Hurwitz units, isomorphic to SL2(F3) with witness verified on 576 products")


def test_criterion_10_property_suites():
    t0 = time.perf_counter()
    rng = np.random.default_rng(0)
    catalog = [Fq(2), Fq(3), Fq(4), Zmod(4), Zmod(6), TruncPoly(Fq(2), 2), Matrix(2, Fq(2)),
               UpperTriangular(2, Fq(3)), EndAb((4, 2)), GroupRing(2, DihedralExpr(6)), UpperTriangular(3, Fq(2))]
    rings = {str(e): build_ring(e) for e in catalog}
    axioms = all(check_ring_axioms(R) for R in rings.values())

    prod_ok = True
    small = [e for e in catalog if build_ring(e).size <= 16]
    for i, a in enumerate(small):
        for b in small[i + 1:]:
            U = units(build_ring(Product((a, b)))).group
            V = direct_product(units(build_ring(a)).group, units(build_ring(b)).group)
            res = is_isomorphic(U, V)
            prod_ok &= bool(res) and verify_isomorphism(U, V, res.witness)

    normal_ok = True
    for R in rings.values():
        ug = units(R)
        H = one_plus(R, jacobson_radical(R), ug)
        normal_ok &= H.is_subgroup() and H.is_normal()

    membership_ok = True
    trials = 0
    for n in range(1, 9):
        for _ in range(12):
            k = int(rng.integers(0, 4))
            vecs = [CoeffVec(tuple(int(x) for x in rng.integers(0, 4, n)), 4) for _ in range(k)]
            S = submodule_from(vecs, 4, length=n)
            span = enumerate_span(vecs, 4, n)
            membership_ok &= S.size() == len(span)
            for _ in range(64):
                cand = tuple(int(x) for x in rng.integers(0, 4, n))
                membership_ok &= S.contains(CoeffVec(cand, 4)) == (cand in span)
            trials += 1

    relabel_ok = True
    corpus = [cyclic(8), dihedral(8), quaternion8(), symmetric(4), sl2(3), holomorph(12)]
    for G in corpus:
        H = relabeled(G, rng.permutation(G.order))
        res = is_isomorphic(G, H)
        relabel_ok &= bool(res) and verify_isomorphism(G, H, res.witness)
        for K in corpus:
            relabel_ok &= bool(is_isomorphic(K, G)) == bool(is_isomorphic(K, H))

    dt = time.perf_counter() - t0
    ok = axioms and prod_ok and normal_ok and membership_ok and relabel_ok
    record(10, ok, dt, f"ring axioms {axioms}, units of products {prod_ok}, 1+J normal {normal_ok}, "
                       f"Z4 membership oracle {membership_ok} ({trials} spans), relabel invariance {relabel_ok}")


if __name__ == "__main__":
    import sys

    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_") and "literal" not in k]
    failed = 0
    for t in tests:
        try:
            t()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
