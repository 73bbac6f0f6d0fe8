import math

import numpy as np
import pytest

import plantlab


def test_graph_and_families():
    g = plantlab.make_family("clique(5)")
    assert g.order == 5 and g.size == 10
    assert plantlab.closed_form_nuclear_norm("clique(5)") == pytest.approx(8.0)
    assert plantlab.nuclear_norm(g.adjacency()) == pytest.approx(8.0)
    assert plantlab.count_copies(plantlab.make_family("clique(3)"), g) == 10
    with pytest.raises(plantlab.InputError):
        plantlab.make_family("clique(")


def test_sampling_is_seeded():
    a = plantlab.sample_er(30, 0.5, 7)
    b = plantlab.sample_er(30, 0.5, 7)
    assert a == b
    g, copy, verts = plantlab.sample_planted(30, 1.0, 0.5, "clique(6)", 3)
    assert copy.size == 15 and len(verts) == 6
    assert copy.is_subgraph_of(g)
    w = plantlab.center_matrix(g, 0.5)
    assert np.allclose(w, w.T) and np.all(np.diag(w) == 0)


def test_adversary_keeps_plant():
    g, copy, verts = plantlab.sample_planted(25, 1.0, 0.5, "clique(5)", 4)
    h = plantlab.apply_adversary("alt_stripper", g, side="alt", n=25, p=1.0, q=0.5, family="clique(5)", seed=1,
                                 plant=(copy, verts))
    assert h == copy
    r = plantlab.apply_adversary({"kind": "random_monotone", "delta": 0.5}, g, side="null", n=25, p=1.0, q=0.5,
                                 family="clique(5)", seed=2)
    assert r.is_subgraph_of(g)


def test_nuclear_program_and_decision():
    g, copy, _ = plantlab.sample_planted(20, 1.0, 0.5, "clique(5)", 5)
    w = plantlab.center_matrix(g, 0.5)
    z, info = plantlab.solve_nuclear_program(w, 0.5, 8.0)
    assert info["converged"]
    assert info["objective"] >= 20 - 1e-3
    d = plantlab.decide({"kind": "nuclear"}, g, n=20, p=1.0, q=0.5, family="clique(5)", tau=10.0)
    assert d["reject"] is True
    with pytest.raises(plantlab.ConfigError):
        plantlab.decide({"kind": "spectral"}, g, n=20, p=1.0, q=0.5, family="clique(5)", tau=0.0)


def test_harness_entry_points():
    tau = plantlab.calibrate_threshold("count", n=20, p=1.0, q=0.5, family="clique(4)", alpha=0.5, trials=400, seed=1)
    assert abs(tau - 95) <= 1
    cfg = {"model": {"n": 20, "q": 0.5, "family": "clique(5)"}, "trials": 20, "seed": 2,
           "detector": {"kind": "count", "threshold": {"source": "explicit", "tau": -1}}}
    r = plantlab.estimate_risk(cfg)
    assert r["type1"] == 1.0 and r["type2"] == 0.0
    csv, summary = plantlab.run_experiment(cfg)
    assert csv.count("\n") == 2
    assert summary["max_risk_over_grid"] == 1.0
    with pytest.raises(plantlab.ConfigError):
        plantlab.estimate_risk({k: v for k, v in cfg.items() if k != "trials"})
    rep = plantlab.regime_report("clique(5)", 30, 1.0, 0.5)
    opt = next(c for c in rep["checks"] if c["name"] == "opt_upper")
    assert abs(opt["lhs"] - 2 * math.log(2) / math.log(30)) < 1e-12
    p_hat, lo, hi = plantlab.estimate_containment_probability("clique(3)", 6, 0.5, 3000, 3)
    assert lo <= plantlab.exact_containment_probability("clique(3)", 6, 0.5) <= hi
    audit = plantlab.uniformity_audit("clique(2)", 3, 0.5, 600, 4)
    assert len(audit["table"]) == 3 and audit["accepted"] == 600
