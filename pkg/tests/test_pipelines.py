import json

import pytest

from divclass.certificates import all_hold, recheck_certificate
from divclass.fgab import group_from_presentation, subgroup_generated
from divclass.field import GF, QQ
from divclass.pipelines import (
    ade_report,
    cone_report,
    doublelines_pipeline,
    lemma5pts_report,
    minimal_degree,
    pinwheel_pipeline,
    rlines_pipeline,
)
from divclass.singularities import SingularityError


def _rechecked(report):
    certs = report["certificates"]
    assert certs
    for c in certs:
        assert c["holds"], c["claim"]
        assert recheck_certificate(json.loads(json.dumps(c))), c["claim"]


def test_ade_report():
    rep = ade_report("D6")
    assert rep["group"]["group"] == "Z/2 + Z/2"
    _rechecked(rep)


def test_doublelines_worked_example():
    rep = doublelines_pipeline()
    assert rep["group"]["group"] == "Z/9"
    assert rep["relation_chain"] == {"P2 = -2*P1": True, "P3 = 4*P1": True, "9*P1 = 0": True}
    assert rep["images"] == {"L1": 1, "L2": 7, "L3": 4}
    assert rep["witness"]["points"] == ["(0:0:1)", "(0:1:0)", "(1:0:0)"]
    assert rep["sum_of_lines"] == {"value": 3, "order": 3}
    assert rep["order_of_P1"] == 9
    _rechecked(rep)
    # the line images generate the reported group
    g = group_from_presentation(rep["group"]["relations"], 3)
    _, index = subgroup_generated(g, [g.gen(0) * rep["images"]["L1"]])
    assert index == 1


def test_doublelines_other_witness():
    rep = doublelines_pipeline(2, 3, 5, 7)
    assert rep["group"]["group"] == "Z/9"
    assert all(rep["relation_chain"].values())


def test_doublelines_rejects_singular_witness():
    with pytest.raises(SingularityError, match="singular"):
        doublelines_pipeline(1, 0, 1, 1)  # the cubic contains the line z = 0


@pytest.mark.parametrize("r", [2, 3, 4])
def test_pinwheel_pipeline(r):
    rep = pinwheel_pipeline(r, seed=r)
    assert rep["ade_type"] == f"A{r - 1}"
    assert rep["residual_zero"]
    assert rep["images"]["L0"] == r - 1
    assert all(rep["images"][f"L{j}"] == 1 for j in range(1, r + 1))
    assert rep["images_match_expected"]
    assert rep["index_of_line_subgroup"] == 1
    _rechecked(rep)


def test_pinwheel_explicit_parameters():
    rep = pinwheel_pipeline(3, a=[1, 2, 3], A=5, B=7)
    assert rep["intersection_vectors"][0] in ([1, 0], [0, 1])
    assert rep["witness"]["unit"] == str(7 * 6 * 7 * 8)
    with pytest.raises(SingularityError):
        pinwheel_pipeline(3, a=[1, 1, 2], A=5, B=7)


def test_minimal_degree():
    assert [minimal_degree(r) for r in range(1, 11)] == [1, 1, 2, 2, 2, 3, 3, 3, 3, 4]


def test_rlines_small_r():
    for r in (1, 2):
        rep = rlines_pipeline(r, seed=0)
        assert rep["local_class_group"] == "0"
        _rechecked(rep)


@pytest.mark.parametrize("r", [3, 4, 5])
def test_rlines_conic_cases(r):
    rep = rlines_pipeline(r, seed=1)
    assert rep["ade_type"] == "A1"
    assert rep["local_class_group"] == "Z/2"
    assert rep["each_line_generates"]
    assert rep["pic_kernel_is_even_sums"]
    w = rep["witness"]
    assert w["dim_degree_d_minus_1"] == 0 and w["dim_degree_d"] > 0
    _rechecked(rep)


def test_rlines_six_lines_uses_experiment():
    rep = rlines_pipeline(6, seed=0)
    assert rep["witness"]["fitting_degree"] == 3
    assert rep["experiment"]["oracle_agrees"]
    assert "not a proof" in rep["evidence_level"]


def test_cone_report_over_q_and_fp():
    rep = cone_report()
    assert rep["relation"]["holds"]
    _rechecked(rep)
    rep = cone_report(coeffs=[3], m=1)
    assert not rep["relation"]["holds"]
    rep = cone_report(field=GF(13))
    assert rep["image_orders"] == {"(0:0:1)": 9}
    assert rep["group"]["group"] == "Z/3 + Z/18"
    assert rep["pic0_order"] == 18
    _rechecked(rep)


def test_lemma5pts_report():
    rep = lemma5pts_report(3, 11, 2)
    assert rep["experiment"]["oracle_agrees"]
    _rechecked(rep)
