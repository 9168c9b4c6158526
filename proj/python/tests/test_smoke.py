import math

import numpy as np
import pytest

import borelab


def test_closed_forms():
    e = borelab.equilibria(2.0)
    assert e["u_tail"] == pytest.approx(3 - math.sqrt(3), rel=1e-14)
    assert borelab.alpha(2.0) == pytest.approx(3.0, rel=1e-12)
    c = 1.2
    assert borelab.froude_from_tail(borelab.equilibria(c)["eta_tail"]) == pytest.approx(c, rel=1e-13)
    assert borelab.bore_speed_t1994(borelab.equilibria(c)["eta_tail"]) > c


def test_classify():
    assert borelab.classify(1.3, 0.2, 1.2)["kind"] == "Regularized"
    r = borelab.classify(2.0, 0.5, 0.3)
    assert r["kind"] == "Oscillatory"
    assert r["Lambda_plus"].imag > 0
    eps = borelab.critical_epsilon(2.0, 0.5)
    assert borelab.classify(2.0, 0.5, eps)["kind"] == "Regularized"


def test_invalid_input_raises():
    with pytest.raises(borelab.InvalidArgument):
        borelab.classify(0.9, 0.2, 1.2)
    with pytest.raises(borelab.BoreLabError):
        borelab.profile(1.3, 0.2, 0.0)


def test_profile_shapes():
    p = borelab.profile(1.3, 0.2, 1.2)
    assert p["regime_observed"] == "Monotone"
    assert len(p["inflections"]) == 1
    assert np.all(np.diff(p["xi"]) > 0)
    u0 = borelab.equilibria(1.3)["u_tail"]
    assert p["u"][0] == pytest.approx(u0, abs=1e-7)
    assert p["energy_residual"] < 1e-3

    q = borelab.profile(2.0, 0.5, 0.3)
    assert q["regime_observed"] == "Oscillatory"
    assert len(q["maxima"]) + len(q["minima"]) >= 5
    assert q["tail_frequency"] is not None


def test_presets_and_evolve():
    names = borelab.presets()
    assert "fig2" in names and "sec4-gaussian" in names
    snaps = borelab.evolve_preset("sec4-gaussian", t_end=1.0)
    assert snaps[0]["t"] == 0.0
    assert snaps[-1]["t"] == pytest.approx(1.0)
    assert snaps[-1]["mass"] == pytest.approx(snaps[0]["mass"], rel=1e-10)
