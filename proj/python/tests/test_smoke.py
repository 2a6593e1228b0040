import math

import numpy as np
import pytest

import frontlab as fl


def test_reaction_values():
    r = fl.Reaction.cubic_bistable(0.25)
    assert r(0.25) == pytest.approx(0.0, abs=1e-15)
    assert r.antiderivative(1.0) == pytest.approx(1 / 24)
    assert np.all(r(np.array([0.1, 0.2])) < 0)
    assert fl.vartheta(fl.Reaction.ignition(0.3)) == 0.3
    assert fl.Reaction.parse("kpp()").kind == "monostable"


def test_hypothesis_failure_is_reported():
    checks = fl.validate(fl.Reaction.cubic_formula(0.6))
    assert checks["(B3)"] is False
    with pytest.raises(fl.Error) as info:
        fl.Reaction.cubic_bistable(0.5)
    assert info.value.invariant == "violates (B3)"


def test_steady_state_and_speed():
    r = fl.Reaction.cubic_bistable(0.25)
    d = fl.Boundary.dirichlet()
    assert fl.critical_slope(r, d) == pytest.approx(math.sqrt(1 / 12))
    p = fl.halfline_steady_state(r, d, 40.0)
    assert p["value"][0] == 0.0
    assert p["value"][-1] > 0.999
    assert np.all(np.diff(p["value"]) >= 0)
    assert fl.wave_speed(r) == pytest.approx(math.sqrt(2) * 0.25, rel=1e-6)


def test_strip_states_ordered():
    s = fl.strip_steady_states(fl.Reaction.ignition(0.3), fl.Boundary.dirichlet(), 40.0)
    phi, psi = s["phi_L"]["value"], s["psi_L"]["value"]
    assert np.all(psi[1:-1] < phi[1:-1])
    h_phi, h_zero, h_psi = s["energy"]
    assert h_phi < h_zero < h_psi


def test_kpp_profile_and_missing_connection():
    kpp = fl.Reaction.kpp()
    w = fl.wave_profile(kpp, 2.5)
    assert np.all(np.diff(w["value"]) <= 0)
    with pytest.raises(fl.Error, match="monotone"):
        fl.wave_profile(kpp, 1.0)


def test_run_config(tmp_path):
    text = "experiment = threshold\n[grid]\nX = 40\nY = 40\nT = 100\n[params]\namplitude = 0.3\nradius = 2\ny_center = 3\n"
    rep = fl.run_config(text, str(tmp_path / "threshold"))
    assert rep["exit_code"] == 0
    assert rep["results"]["outcome"] == "extinct"
    assert (tmp_path / "threshold" / "manifest.txt").exists()
    with pytest.raises(fl.Error, match="grid.spacing"):
        fl.run_config("experiment = steady\n[grid]\nspacing = 1\n", str(tmp_path / "bad"))


def test_threads_setting():
    fl.set_threads(1)
    assert fl.threads() == 1
    assert "spread" in fl.experiments()
