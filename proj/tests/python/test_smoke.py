import json
from pathlib import Path

import numpy as np
import pytest

import hardylab as hl

ROOT = Path(__file__).resolve().parents[2]
L, N = 20.0, 1024


def test_free_flow_matches_closed_form():
    u0 = hl.gaussian(L, N, 1.0)
    c, amp = hl.evolve_gaussian(1.0, 1.0, 0.0, 1.0, 0.5)
    exact = hl.gaussian(L, N, c, amp)
    u = hl.free_flow(u0, L, 0.0, 1.0, 0.5)
    dx = 2 * L / N
    assert np.sqrt(np.sum(np.abs(u - exact) ** 2) * dx) < 1e-9


def test_semigroup_and_weights():
    u0 = hl.gaussian(L, N, 1.0)
    assert hl.semigroup_identity_check(u0, L, 0.1 + 0.2j, 0.3 - 0.1j) < 1e-12
    value, tail, converged = hl.weighted_l2_norm(u0, L, 0.25)
    assert converged
    assert value == pytest.approx((2 * np.pi / 3) ** 0.25, rel=1e-10)
    r = hl.lemma1_decay_check(u0, L, 1.0, 0.0, 0.5, 1.0)
    assert r["weight_rate"] == pytest.approx(1 / 6, rel=1e-15)
    assert r["margin"] >= 0.0


def test_forms_and_bounds():
    f = hl.gaussian(L, N, 1.0)
    c = hl.commutator_form(f, L, 1.0, 1.0, 0.0)
    assert c["value_of_form"] == pytest.approx(16 * np.sqrt(np.pi / 2), rel=1e-10)
    lhs, rhs, margin = hl.hermite_lower_bound_check(f, L, 1.0)
    assert abs(margin) < 1e-9 * rhs
    t = np.linspace(0, 1, 11)
    r = hl.log_convexity_check(t, np.exp(t**2))
    assert r["min_second_diff"] > 0


def test_appell_and_hardy():
    assert hl.s_map(1.0, 3.0, 0.5) == pytest.approx(0.75)
    lower, upper, nonempty = hl.parameter_window(0.4, 0.1)
    assert not nonempty and lower == pytest.approx(0.79128, abs=1e-5)
    assert hl.heat_boundary(1.0) == pytest.approx(np.sqrt(5))
    u0 = hl.gaussian(30.0, 2048, 1.0)
    uT = hl.free_flow(u0, 30.0, 0.0, 1.0, 1.0)
    assert hl.hardy_product(u0, uT, 30.0, 1.0)["normalized"] == pytest.approx(np.sqrt(17) / 4, rel=1e-6)


def test_carleman_rows_and_errors():
    rows = hl.carleman_sweep(bumps=2, mu=[1.0], epsilon=[0.5], R=[1.0, 5.0], nodes=48)
    assert len(rows) == 4 and all(r["pass"] for r in rows)
    with pytest.raises(hl.HardylabError, match="BackwardDissipative"):
        hl.free_flow(hl.gaussian(L, N), L, 1.0, 0.0, -1.0)


def test_run_config(tmp_path):
    cfg = json.loads((ROOT / "configs/examples/hardy.json").read_text())
    a = hl.run_config(cfg)
    b = hl.run_config(cfg, out_dir=tmp_path)
    assert a["pass"] and b["pass"]
    assert (tmp_path / "summary.json").exists()
    assert a["experiments"][0]["checks"] == b["experiments"][0]["checks"]
    assert hl.run_config(cfg, seed=5)["seed"] == 5
    with pytest.raises(hl.HardylabError, match="weight.γ"):
        hl.run_config({"kind": "convexity", "params": {"gamma": -1, "trace": {}}})
