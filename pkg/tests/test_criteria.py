"""Triple additivity, signature obstructions, complement scans, stand-ins."""

from __future__ import annotations

import pytest

from lieck.criteria import (
    check_triple,
    g2_elimination,
    obstruction_search,
    substitution_check,
    verify_table1,
)


def test_check_triple_additive(catalog):
    res = check_triple(catalog, "so(4,4)", "so(3,4)", "so(1,4)")
    assert res["ok"]
    assert res["g"] == {"name": "so(4,4)", "d": 16, "r": 4}
    assert res["h"]["d"] + res["l"]["d"] == 16
    assert res["h"]["r"] + res["l"]["r"] == 4


def test_check_triple_dimension_mismatch(catalog):
    # d fails (12 != 8 + 3) even though the ranks add up
    res = check_triple(catalog, "so(3,4)", "g2(2)", "so(1,3)")
    assert res["g"]["d"] == 12
    assert res["h"]["d"] == 8
    assert res["l"]["d"] == 3
    assert not res["cocompact"]
    assert res["rank_additive"]
    assert not res["ok"]


def test_check_triple_rejects_compact_factor(catalog):
    res = check_triple(catalog, "so(1,4)", "so(1,4)", "so(4)")
    assert res["cocompact"]  # 4 = 4 + 0
    assert not res["rank_additive"]  # compact complement
    assert not res["ok"]


def test_check_triple_parametric(catalog):
    for n in (1, 2, 7):
        res = check_triple(catalog, "su(2,2*n)", "sp(1,n)", "su(1,2*n)", n=n)
        assert res["ok"], n


def test_verify_table1(catalog):
    res = verify_table1(catalog, n_max=25)
    assert res["ok"]
    assert res["rows_checked"] == 14
    by_row = {r["row"]: r for r in res["rows"]}
    assert not any(r["failures"] for r in res["rows"])
    parametric = [r["row"] for r in res["rows"] if r["points"] > 1]
    assert parametric == [1, 2, 3, 4, 5, 6, 7, 8]
    assert all(by_row[row]["points"] == 25 for row in parametric)
    assert by_row[8]["cross_check"] == {"same_as": 5, "identical": True}
    assert by_row[12]["cross_check"]["matches_at_n1"] is True
    assert by_row[13]["cross_check"]["special_of"] == 7
    assert by_row[14]["cross_check"]["special_of"] == 5


def test_obstruction_search_finds_odd_witness_first(catalog):
    res = obstruction_search("so(4,5)", "so(2,3)", catalog)
    assert res["witness"] == "so(2,5)"
    assert res["d"] == 10 and res["r"] == 2
    assert res["candidates"] == ["so(2,5)", "so(2,4)"]


def test_obstruction_search_exhausted(catalog):
    res = obstruction_search("so(2,3)", "so(1,3)", catalog)
    assert res["witness"] is None
    assert res["candidates"] == []
    assert res["g"] == "so(2,3)" and res["h"] == "so(1,3)"


def test_obstruction_search_rejects_bad_specs(catalog):
    with pytest.raises(ValueError, match="orthogonal"):
        obstruction_search("su(2,3)", "so(1,2)", catalog)
    with pytest.raises(ValueError, match="non-compact"):
        obstruction_search("so(4,5)", "so(0,3)", catalog)


def test_g2_elimination(catalog):
    res = g2_elimination(catalog)
    assert res["ok"]
    assert res["survivors"] == [
        {"ambient": "so(6,7)", "h": "g2(C)", "l": "so(4,7)"}
    ]
    assert all(r["status"] == "ok" for r in res["rows"])
    rejects = [r for r in res["rows"] if r["mode"] == "reject"]
    scans = [r for r in res["rows"] if r["mode"] == "scan"]
    assert rejects and scans
    for r in rejects:
        if "real_rank" in r:
            assert r["real_rank"] == 2
    (winner,) = [r for r in scans if r["feasible"]]
    assert winner["ambient"] == "so(6,7)"
    assert winner["feasible"] == ["so(4,7)"]
    assert "split" in winner["note"]


def test_substitution_check(catalog):
    res = substitution_check(catalog)
    assert res["ok"]
    assert res["recorded_mismatches"] == ["f4(C)"]
    by_form = {r["form"]: r for r in res["rows"]}
    assert by_form["f4(4)"]["substitute"] == "so(4,9)"
    assert by_form["f4(4)"]["computed_d"] == 36
    assert by_form["f4(4)"]["recorded_matches"] is True
    assert by_form["f4(-2)"]["computed_d"] == 20
    assert by_form["f4(C)"]["recorded_d"] == 83
    assert by_form["f4(C)"]["computed_d"] == 84
    assert by_form["f4(C)"]["recorded_matches"] is False
    assert by_form["f4(C)"]["ok"]  # flagged, not failed
    assert by_form["g2(C)"]["substitute"] == "so(2,7)"
    assert by_form["g2(C)"]["computed_d"] == 14
    assert by_form["g2(2)"]["computed_d"] == 10
    # every exceptional non-compact form is present, substitute or not
    assert by_form["e8(8)"]["substitute"] is None
    assert len(res["rows"]) == 17
