import json

import pytest

from finalg.groups import conjugacy_classes
from finalg.verifier import (CHECKS, UNITS_TABLE, CheckReport, SL23Frame, _char4_sweep, _timed, cube_identity,
                             run_checks, square_identity, stable_json, uc_expected_order)

# (log2 |I|, |kernel|) per (eps, v) with eps in (1, -1) and v over 1 then the order-3 elements
CHAR4_DERIVED = [(47, 24), (45, 8), (47, 24), (47, 24), (43, 2), (43, 2), (47, 24), (43, 2), (47, 24)] * 2
CHAR4_PRINTED = [(47, 24), (45, 8), (47, 24), (47, 24), (45, 8), (45, 8), (47, 24), (45, 8), (47, 24)] * 2


@pytest.fixture(scope="module")
def full_report():
    return run_checks()


def test_every_check_passes(full_report):
    failing = [r["check_name"] for r in full_report["checks"] if r["status"] != "pass"]
    assert full_report["status"] == "pass", failing
    assert [r["check_name"].split("[")[0] for r in full_report["checks"]] == [
        "units_table", "sl23_char2", "sl23_char4", "sl23_choice_independence", "sl_facts", "uc",
        "char0_obstruction", "hol_facts", "theorem_neat", "hurwitz", "agl1_remark"]


def test_pass_means_every_case_examined(full_report):
    for r in full_report["checks"]:
        if r["status"] == "pass":
            assert r["cases_examined"] == r["cases_total"] > 0


def test_schema(full_report):
    for r in full_report["checks"]:
        assert set(r) == {"check_name", "status", "cases_total", "cases_examined", "wall_time_ms", "witnesses"}
    json.dumps(full_report)


def test_reports_are_deterministic(full_report):
    again = run_checks(jobs=2)
    assert stable_json(again) == stable_json(full_report)


def test_unexamined_cases_fail_the_check():
    def body(r: CheckReport):
        r.case(True)

    report = _timed("short", 2)(body)
    assert report.status == "fail"


def test_unknown_check_name():
    with pytest.raises(KeyError):
        run_checks(["nope"])


def test_units_table_rows():
    assert len(UNITS_TABLE) == 15
    assert sorted({n for _, n, _ in UNITS_TABLE}) == [1, 2, 3, 4, 6, 12]


def test_frame_matches_quaternion_relations():
    F = SL23Frame()
    G = F.G
    assert G.mul(F.i, F.i) == G.mul(F.j, F.j) == G.mul(F.k, F.k) == F.m
    assert G.mul(F.m, F.m) == F.e
    assert len(F.order3) == 8 and F.c not in F.q8
    assert F.c == F.order3[0]


def test_alternative_c_is_in_the_other_class():
    F0, F1 = SL23Frame(), SL23Frame("alternative")
    assert F0.c != F1.c
    cls = next(C for C in conjugacy_classes(F0.G) if F0.c in C)
    assert F1.c not in cls
    # the order-3 elements split into two conjugacy classes of size 4
    sizes = sorted(len(C) for C in conjugacy_classes(F0.G) if set(C) <= set(F0.order3))
    assert sizes == [4, 4]


def test_identities_at_each_strictness():
    F = SL23Frame()
    assert square_identity(F) == {"exact": False, "modulo_1+i^2": True}
    holds = [c for c in F.order3 if cube_identity(F, c)["modulo_1+i^2_and_2r-2"]]
    assert holds == [2, 7, 12, 20]
    assert not any(cube_identity(F, c)["modulo_1+i^2"] for c in F.order3)


@pytest.mark.parametrize("generator,sign,expected", [
    ("i+j+k", 1, CHAR4_DERIVED),
    ("i+j+k", -1, CHAR4_DERIVED),
    ("1+j+k", 1, CHAR4_PRINTED),
])
def test_char4_sweeps_frozen(generator, sign, expected):
    cases = _char4_sweep(SL23Frame(), generator, sign)
    assert [(int(c["ideal_log2_size"]), c["kernel_size"]) for c in cases] == expected
    assert all(not c["injective"] and c["two_r_minus_two_in_ideal"] for c in cases)


def test_uc_order_rule():
    assert [uc_expected_order(q) for q in (3, 5, 7, 9, 11, 13)] == [4, 4, 8, 8, 12, 12]


def test_check_registry_is_complete():
    assert set(CHECKS) == {"units_table", "sl23_char2", "sl23_char4", "sl23_choice", "sl_facts", "uc",
                           "char0_obstruction", "hol_facts", "theorem_neat", "hurwitz", "agl1_remark"}
