import json
import os
import subprocess
from pathlib import Path

import numpy as np
import pytest

import dyadic

ROOT = Path(__file__).resolve().parents[2]
SCENARIO = ROOT / "scenarios" / "paper_fig4.scn"


def path_graph():
    g = dyadic.Graph(3)
    g.add_edge(1, 2, 1.2)
    g.add_edge(2, 3, 1.0)
    return g


def triangle():
    g = dyadic.Graph(3)
    for i, j in [(1, 2), (2, 3), (1, 3)]:
        g.add_edge(i, j, 1.0)
    return g


def test_graph_is_one_based():
    g = path_graph()
    assert g.num_vertices == 3
    assert g.edges() == [(1, 2, 1.2), (2, 3, 1.0)]
    assert g.weight(2, 1) == 1.2
    with pytest.raises(ValueError):
        g.add_edge(0, 1, 1.0)
    with pytest.raises(dyadic.GraphError):
        g.add_edge(1, 2, 2.0)


def test_nash_on_the_path():
    s = dyadic.simulate(path_graph(), "nash", t_final=60)
    assert s["status"] == "converged"
    assert s["is_nash"]
    assert s["outcome"]["matching"] == [[1, 2]]
    np.testing.assert_allclose(s["outcome"]["alloc"], [0.1, 1.1, 0.0], atol=1e-6)
    traj = s["trajectory"]
    assert traj["columns"][0] == "t"
    assert traj["data"].shape[1] == len(traj["columns"])
    assert "alpha_b_1" in traj["columns"]


def test_stable_triangle_is_undecided():
    s = dyadic.simulate(triangle(), "stable")
    assert s["status"] == "undecided"
    assert s["message"] == "no integral solution (fractional LP optimum)"


def test_balanced_single_edge():
    g = dyadic.Graph(2)
    g.add_edge(1, 2, 1.0)
    s = dyadic.simulate(g, "balanced", matching=[(1, 2)])
    np.testing.assert_allclose(s["outcome"]["alloc"], [0.5, 0.5], atol=1e-4)
    with pytest.raises(ValueError):
        dyadic.simulate(g, "balanced")


def test_config_fields_and_validation():
    c = dyadic.config(dt=5e-4, noise_kind="gauss", seed=3)
    assert c.dt == 5e-4 and c.noise_kind == "gauss" and c.tol == 1e-4
    with pytest.raises(TypeError):
        dyadic.config(bogus=1)
    with pytest.raises(ValueError):
        dyadic.simulate(path_graph(), "nash", dt=-1.0)


def test_seeded_runs_repeat():
    kw = dict(t_final=3, noise_kind="uniform", noise_bound=0.02, seed=11)
    a = dyadic.simulate(path_graph(), "nash", **kw)["trajectory"]["data"]
    b = dyadic.simulate(path_graph(), "nash", **kw)["trajectory"]["data"]
    assert np.array_equal(a, b)


def test_predicates_and_oracles():
    g = path_graph()
    assert dyadic.predicates(g, [(1, 2)], [0.1, 1.1, 0.0]) == {
        "valid": True, "stable": True, "balanced": True, "nash": True}
    assert not dyadic.predicates(g, [(1, 2)], [0.6, 0.6, 0.0])["stable"]

    mwm = dyadic.max_weight_matching(g)
    assert mwm == {"matching": [(1, 2)], "weight": "6/5", "unique": True}

    res = dyadic.nash_oracle(g)
    assert res["relaxation_integral"]
    np.testing.assert_allclose(res["nash"], [[0.1, 1.1, 0.0]])

    tri = dyadic.nash_oracle(triangle())
    assert not tri["relaxation_integral"]
    assert tri["relaxation_value"] == "3/2"


def test_read_graph_reports_line(tmp_path):
    p = tmp_path / "bad.grf"
    p.write_text("n 2\ne 1 3 1\n")
    with pytest.raises(dyadic.ParseError, match="bad.grf:2"):
        dyadic.read_graph(p)


def test_wireless_scenario():
    g = dyadic.scenario_graph(SCENARIO)
    assert [(i, j) for i, j, _ in g.edges()] == [(1, 2), (2, 3), (3, 4), (3, 5), (4, 5)]
    s = dyadic.simulate(g, "nash")
    assert s["outcome"]["matching"] == [[2, 3], [4, 5]]
    rep = dyadic.improvement_report(SCENARIO, s["outcome"]["alloc"])
    percents = [round(r["percent"], 1) for r in rep["rows"]]
    assert percents[1:] == pytest.approx([39.3, 8.7, 11.4, 18.3], abs=0.15)


@pytest.mark.skipif("DYADIC_CLI" not in os.environ, reason="CLI path not provided")
def test_cli_round_trip(tmp_path):
    cli = str(Path(os.environ["DYADIC_CLI"]).resolve())
    (tmp_path / "path.grf").write_text("n 3\ne 1 2 1.2\ne 2 3 1\n")
    r = subprocess.run([cli, "simulate", "nash", "--graph", "path.grf", "--out", "run"],
                       cwd=tmp_path, capture_output=True, text=True)
    assert r.returncode == 0, r.stderr
    summary = json.loads((tmp_path / "run" / "summary.json").read_text())
    assert summary["schema"] == 1 and summary["is_nash"]

    r = subprocess.run([cli, "simulate", "stable", "--graph", "missing.grf"],
                       cwd=tmp_path, capture_output=True, text=True)
    assert r.returncode == 1
