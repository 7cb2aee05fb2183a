import json

import pytest

from vwhecke.bcvw import (Assignment, NotScalarPlusTheta, RelationReport, check_quotient_presentation,
                          check_relations, derive_quotient_constants, full_presentation, printed_constants,
                          proportional, quotient_presentation, relation_catalogue, standard_assignment,
                          w0_centrality)
from vwhecke.exactlin import ExactMatrix, gr
from vwhecke.liealg import GroupSpec, build_algebra

CASES = ["sp:2", "sp:4", "sp:6", "opq:3,2", "opq:4,3"]
# relations that cannot hold on V^k itself: there is no module leg for z_1 to act on,
# and theta_j does not preserve the invariant line of two tensor legs
TENSOR_FAILURES = {"Sp": {"V.e_sum", "C.e_theta", "C.e_thth"}, "Opq": {"V.e_sum", "C.e_theta"}}


def alg(text):
    return build_algebra(GroupSpec.parse(text))


def test_generators_and_catalogue():
    p = full_presentation(3)
    assert p.generators == ["t1", "t2", "e1", "e2", "z1", "z2", "z3", "theta1", "theta2", "theta3"]
    ids = {rid for rid, _ in relation_catalogue(3)}
    for rid in ("W.theta_sq", "W.order4", "B.e_sq", "B.conj", "V.cross", "V.e_zl_e", "C.e_theta", "C.e_thth",
                "C.e_th_e", "C.theta_z", "Q.ideal", "Q.cross"):
        assert rid in ids


def test_assignment_basics():
    a = standard_assignment(alg("sp:4"), 2)
    assert a.matrices["z1"].is_zero()
    from vwhecke.tensorops import TensorSpace, build_omega
    assert a.matrices["z2"] == build_omega(TensorSpace(4, 2), alg("sp:4"), 1, 2).matrix
    for j in (1, 2):
        th = a.matrices[f"theta{j}"]
        assert th @ th == a.identity()
    with pytest.raises(ValueError):
        Assignment(1, {"x": ExactMatrix.identity(2), "y": ExactMatrix.identity(3)}).validate()


@pytest.mark.parametrize("text", CASES)
@pytest.mark.parametrize("k", [1, 2, 3])
def test_tensor_relation_suite(text, k):
    d = alg(text)
    rep = check_relations(full_presentation(k), standard_assignment(d, k))
    failed = {r.relation_id for r in rep.failures()}
    assert failed == (TENSOR_FAILURES[d.spec.family] if k >= 2 else set())
    assert rep.status_of("K.commute") == "pass"
    assert all(w0_centrality(standard_assignment(d, k)).values())
    if k >= 2:
        # the scalars read off are |m0| = dim V and m1 = 0 or -1
        assert rep.derived["m0"] == (d.dimV if d.spec.is_sp else -d.dimV)
        assert rep.derived["m1"] == (0 if d.spec.is_sp else -1)
        assert rep.derived["w1"] == 0 and rep.derived["w2"] == 0
        for r in rep.by_id("V.e_sum"):
            assert r.derived["e_sum_scalar"] != "0"


def test_printed_brauer_parameter_differs_in_size():
    for text in CASES:
        d = alg(text)
        rep = check_relations(full_presentation(2), standard_assignment(d, 2))
        printed = printed_constants(d.spec)
        assert abs(int(str(rep.derived["m0"]))) != abs(int(str(printed["m0"])))
        assert abs(int(str(rep.derived["m1"]))) == abs(int(str(printed["m1"])))


def test_literal_assignment_breaks_cross_relation():
    for text in ("sp:4", "opq:3,2"):
        d = build_algebra(GroupSpec.parse(text), swap_sign=1)
        rep = check_relations(full_presentation(2), standard_assignment(d, 2, "literal"))
        assert rep.status_of("V.cross") == "fail"


def test_negative_control_theta_identity():
    d = alg("opq:3,2")
    a = standard_assignment(d, 2)
    good = check_relations(full_presentation(2), a)
    m1 = good.derived["m1"]
    bad = Assignment(2, dict(a.matrices), "corrupted", a.k_action)
    for j in (1, 2):
        bad.matrices[f"theta{j}"] = bad.identity()
    rep = check_relations(full_presentation(2), bad, params={"m1": m1})
    assert rep.status_of("C.e_th_e") == "fail"


def test_quotient_precondition_reported_on_tensor_space():
    a = standard_assignment(alg("sp:4"), 2)
    rep = check_quotient_presentation(quotient_presentation(2), a, (gr(0), gr(0)))
    assert rep.status_of("Q.precondition") == "fail"


def test_derive_constants_requires_anticommutator():
    with pytest.raises(NotScalarPlusTheta):
        derive_quotient_constants(RelationReport("x", [], {}))
    rep = check_relations(full_presentation(1), standard_assignment(alg("sp:4"), 1))
    assert derive_quotient_constants(rep) == (0, 0)


def test_proportional():
    m = ExactMatrix.from_rows([[1, 2], [0, 1]])
    assert proportional(m.scale(3), m) == (True, 3)
    assert proportional(ExactMatrix.identity(2), m)[0] is False
    assert proportional(ExactMatrix.zeros(2), ExactMatrix.zeros(2)) == (True, None)


def test_report_json():
    rep = check_relations(full_presentation(2), standard_assignment(alg("opq:3,2"), 2))
    doc = json.loads(rep.to_json())
    assert set(doc) == {"label", "all_passed", "relations", "derived_constants"}
    assert doc["all_passed"] is False
    row = doc["relations"][0]
    assert {"relation_id", "latex_form", "status", "derived_constants"} <= set(row)
    assert doc["derived_constants"]["m0"] == "-5"
