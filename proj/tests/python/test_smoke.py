"""Smoke tests for the python bindings."""

import json
import math

import pytest

import sl2wave as sw


def test_version():
    assert sw.__version__


def test_generator_brackets():
    def matmul(a, b):
        return [
            [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
            [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
        ]

    for gens in (sw.generators_sl2r(), sw.generators_su11()):
        k1, k2, j3 = gens
        lhs = matmul(k1, k2)
        rhs = matmul(k2, k1)
        comm = [[lhs[i][j] - rhs[i][j] for j in range(2)] for i in range(2)]
        for i in range(2):
            for j in range(2):
                assert comm[i][j] == pytest.approx(-1j * j3[i][j], abs=1e-15)


def test_exp_generator_two_valuedness():
    m = sw.exp_generator((0.0, 0.0, 1.0), 2.0 * math.pi)
    assert m[0][0] == pytest.approx(-1.0, abs=1e-12)
    assert m[1][1] == pytest.approx(-1.0, abs=1e-12)
    assert abs(m[0][1]) < 1e-12


def test_propagation_keeps_the_cone():
    eps = [v * math.pi / 400.0 for v in (3.0, 1.0, 2.0)]
    profile = sw.PotentialProfile.constant(1.0, eps[0], eps[1], eps[2])
    traj = sw.propagate(profile, 1.0, 0.0, 100.0, 0.01)
    assert traj["x"][-1] == pytest.approx(100.0)
    for a, b in zip(traj["alpha"][::500], traj["beta"][::500]):
        s0, s1, s2, s3 = sw.bloch_from_complex(a, b)
        assert abs(s1 * s1 + s2 * s2 - s3 * s3) <= 1e-9 * s3 * s3
        assert s0 == pytest.approx(0.0, abs=1e-12)


def test_classify():
    assert sw.classify((0.0, 0.0, 0.03))["kind"] == "elliptic"
    assert sw.classify((0.0, 0.02, 0.0))["kind"] == "hyperbolic"


def test_winding_and_monodromy_sign():
    e0 = math.pi / 100.0
    profile = sw.PotentialProfile.constant(1.0, e0, 0.0, 0.0)
    period = 2.0 * math.pi / e0
    bloch = sw.propagate_bloch(sw.bloch_from_real(1.0, 0.0), profile, period, 0.01)
    assert sw.winding_number(bloch["s"]) == 1
    m = sw.monodromy(profile, 0.0, period, 0.01)
    assert m[0][0].real == pytest.approx(-1.0, abs=1e-6)


def test_cycle_phases_add_up():
    e0 = math.pi / 100.0
    profile = sw.PotentialProfile.constant(1.0, e0, 0.0, 0.0)
    nu0 = 1.0
    g = sw.group_element(0.0, nu0, 0.0)
    r = 1.0 / math.sqrt(2.0)
    alpha = g[0][0] * r + g[0][1] * (1j * r)
    beta = g[1][0] * r + g[1][1] * (1j * r)
    res = sw.analyze_cycle(profile, alpha, beta, 2.0 * math.pi / e0, 0.01)
    assert res["total"] == pytest.approx(-math.pi, abs=1e-8)
    assert res["dynamical"] == pytest.approx(math.pi * math.cosh(nu0), abs=1e-8)
    assert abs(res["residual"]) < 1e-6


def test_gauge_flux_sign():
    g = sw.GaugeMap.step(10.0, 30.0, 0.0, math.pi)
    flux = sw.gauge_flux(g, 0.0, 40.0, 1.0)
    assert flux["sign"] == -1
    assert flux["length"] == pytest.approx(2.0 * math.pi, abs=1e-9)


def test_preset_outputs(tmp_path):
    out = sw.run_preset("fig4", str(tmp_path))
    assert out["status"] == 0
    summary = json.loads((tmp_path / "fig4_pos_summary.json").read_text())
    assert summary["scenario"] == "fig4_pos"
    assert summary["validation"]["rms"] < 0.05
    header = (tmp_path / "fig4_pos_trajectory.csv").read_text().splitlines()[0]
    assert header == "x,re_alpha,im_alpha,re_beta,im_beta,s0,s1,s2,s3"


def test_config_rejects_unknown_keys(tmp_path):
    bad = json.dumps({"name": "x", "length": 10, "profile": {"epsilson": 0.1}})
    with pytest.raises(ValueError, match="epsilson"):
        sw.run_config(bad, str(tmp_path))
