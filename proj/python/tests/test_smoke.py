import math

import pytest

import pbnest


def circle(n, r=4.0):
    return [[r * math.cos(2 * math.pi * j / n), r * math.sin(2 * math.pi * j / n)] for j in range(n)]


def test_density_on_circle64():
    report = pbnest.density_check_circle(circle(64), 0.5, 4.0)
    assert report["passed"]
    assert report["max_gap"] == pytest.approx(8 * math.sin(math.pi / 128), abs=1e-3)


def test_sparse_cover_fails():
    assert not pbnest.density_check_circle(circle(8), 0.5, 4.0)["passed"]


def test_diagram_queries():
    D = pbnest.analytic_circle_diagram(4.0)
    assert D.pbn(0, 1.0, 2.5) == 2
    assert D.pbn(1, 4.5, 10.0) == 1
    with pytest.raises(ValueError):
        D.pbn(0, 2.0, 1.0)
    again = pbnest.Diagram.from_csv(D.to_csv())
    assert again.pairs(0) == D.pairs(0)


def test_union_diagram_and_strips():
    U = pbnest.union_diagram(circle(64), 0.5)
    assert U.pbn(0, 1.0, 2.5) == 2
    assert pbnest.strips(U, 0, 0.5)["W"] == 0.5
    cls, dist = pbnest.classify(U, 0, 0.5, 1.0, 2.5)
    assert cls == "outside" and dist > 0.5
    s = pbnest.sandwich(U, 0, 1.0, 2.5, 0.5)
    assert s["lower"] == 2 and s["upper"] == 2


def test_bounds():
    assert pbnest.pseudodistance_bound(0, [0.4], [2.2], 3, [1.1], [1.5], 2) == pytest.approx(0.7, abs=1e-12)
    assert pbnest.pseudodistance_bound(0, [0.4], [2.2], 2, [1.1], [1.5], 2) is None
    D = pbnest.analytic_circle_diagram(4.0)
    assert pbnest.search_bound(D, 0.5, D, 0.5) is None


def test_scenario(tmp_path):
    assert "quarter9" in pbnest.scenario_names()
    report = pbnest.run_scenario("quarter9", tmp_path)
    assert report["passed"]
    assert (tmp_path / "report.json").exists()
    with pytest.raises(ValueError):
        pbnest.run_scenario("nope")
