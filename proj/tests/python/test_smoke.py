import json
import pathlib

import pytest

import eqsk

DATA = pathlib.Path(__file__).resolve().parent.parent / "data"


def load(name):
    return json.loads((DATA / name).read_text())


def test_group_and_subgroups():
    g = eqsk.group("S3")
    assert g["order"] == 6
    subs = eqsk.subgroups("S3")
    assert len(subs["subgroups"]) == 6
    assert subs["class_count"] == 4
    assert eqsk.group(load("c2.json"))["order"] == 2


def test_marks_and_products():
    assert eqsk.table_of_marks("C2") == [[2, 1], [0, 1]]
    # [C2/e]^2 = 2[C2/e]
    assert eqsk.burnside_mul("C2", [1, 0], [1, 0]) == [2, 0]


def test_associativity():
    r = eqsk.associativity_test("S3", trials=50)
    assert r["trials"] == 50
    assert r["failures"] == 0


def test_mackey():
    m = eqsk.burnside_mackey("C2")
    assert eqsk.validate_mackey(m)["passed"]
    bad = eqsk.validate_mackey(load("c2-burnside-bad-transfer.json"))
    failed = [a["axiom"] for a in bad["axioms"] if a["status"] == "fail"]
    assert failed == ["double_coset"]


def test_squares():
    assert eqsk.check_axioms(load("finite-sets-2.json"))["passed"]
    assert eqsk.k0(load("finite-sets-2.json"))["free_rank"] == 1
    assert not eqsk.check_axioms(load("negative-iv.json"))["passed"]
    with pytest.raises(eqsk.PreconditionError):
        eqsk.k0(load("negative-iv.json"))


def test_sk_dim0():
    r = eqsk.sk_k0("S3", 3, 18)
    assert r["free_rank"] == 4 and r["torsion"] == []
    m = eqsk.k0_mackey("C3")
    assert m["isomorphism"] and m["ranks"] == [1, 2]
    assert eqsk.phi_psi_check("C2", [0], 6)["passed"]
    assert eqsk.beck_chevalley("C2", 6)["failures"] == 0


def test_euler():
    c = load("c2-reflection-s1.json")
    assert eqsk.euler_characteristic(c) == {"chi": [-1, 2], "marks": [0, 2], "schema": "eqsk/1"}
    assert eqsk.fixed_euler(c, [0, 1]) == 2


def test_smith():
    s, u, v = eqsk.smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert [s[i][i] for i in range(3)] == [2, 6, 12]


def test_errors():
    with pytest.raises(eqsk.StructuralError):
        eqsk.group("Z9")
    with pytest.raises(eqsk.EqskError):
        eqsk.k0_mackey("C2", 1)
