import pytest

import asinv


def test_describe():
    c = asinv.describe(3, [4, 2, 1])
    assert (c["g"], c["s"], c["D"], c["dim"]) == (8, 4, 8, 6)


def test_roadmap_two_poles():
    r = asinv.roadmap(3, [2, 1], timing=False)
    assert r["generators"] == ["a*b", "a^4", "b^4"]
    assert r["count"] == 3
    assert r["elapsed_ms"] == 0
    assert r["action"]["is_group"]


def test_roadmap_ring_option():
    assert asinv.roadmap(3, [4, 2, 1])["count"] == 6
    assert asinv.roadmap(3, [4, 2, 1], ring=True)["count"] == 21


def test_errors():
    with pytest.raises(ValueError):
        asinv.roadmap(3, [3])


def test_table1_rows():
    rows = asinv.table1(timing=False)
    assert len(rows) == 36
    assert sum(1 for r in rows if r["annotation"]) == 6


def test_iso():
    assert asinv.iso("p=3; x^2+1*x+1/x", "p=3; x^2+2*x+2/x")["verdict"] == "isomorphic"
    assert asinv.iso("p=3; x^2+1*x+1/x", "p=3; x^2+1*x+2/x")["verdict"] == "not-isomorphic"


def test_verify():
    r = asinv.verify("separation-21p3")
    assert r["passed"]
    assert "81 points" in r["lines"][0]
    assert "fourpole-J" in asinv.suite_names()
