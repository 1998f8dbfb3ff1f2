import math

import pytest

import dirichlet_noise as dn


def test_heat_kernel_reference_value():
    dom = dn.Domain.interval(0.0, 1.0)
    cfg = dn.KernelConfig()
    assert dn.heat_kernel(dom, cfg, 0.1, [0.3], [0.5]) == pytest.approx(
        0.60296818234553583, abs=1e-12
    )


def test_domain_geometry():
    ball = dn.Domain.unit_ball(2)
    assert ball.dimension() == 2
    assert ball.bounded()
    assert ball.id() == "ball2"
    assert ball.contains([0.5, 0.2])
    assert not ball.contains([1.5, 0.0])
    assert ball.dist_to_boundary([0.6, 0.0]) == pytest.approx(0.4)
    probes = ball.normal_probe_line([1.0, 0.0], [0.5, 0.1])
    assert probes[0][0] == pytest.approx(0.5)
    assert probes[1][0] == pytest.approx(0.9)


def test_fit_blowup_recovers_exponent():
    dists = [0.5, 0.2, 0.1, 0.05, 0.02]
    rep = dn.fit_blowup(dists, [d**-2 for d in dists])
    assert rep["slope"] == pytest.approx(-2.0, abs=1e-10)
    assert rep["r_squared"] == pytest.approx(1.0, abs=1e-10)


def test_young_i_alpha_constant():
    alpha = 0.3
    got = dn.young_i_alpha(lambda r: 1.0, 1.0, alpha)
    assert got == pytest.approx(1.0 / (1.0 - alpha), abs=1e-8)


def test_heat_tail_bound():
    rep = dn.check_heat_tail_bound(2, 3.0, 1.0, [0.3, 0.8, 1.5])
    assert rep["ok"]
    assert rep["limit"] == pytest.approx(36.0)
    assert rep["worst_quad_error"] <= 1e-10


def test_run_experiment_roundtrip(tmp_path):
    out = dn.run_experiment(
        "elliptic-rate", "ball2", "signed-series", out_dir=str(tmp_path)
    )
    assert out["pass"], out["failures"]
    header = open(out["csv"]).readline().strip()
    assert header == "experiment,domain,dist,t,value,stderr,bound_rhs,ratio,N,seed"


def test_list_experiments_mentions_registry():
    text = dn.list_experiments()
    assert "elliptic-rate" in text
    assert "young-bound" in text
    assert "all registered" in text


def test_config_error_is_mapped():
    with pytest.raises(dn.ConfigError):
        dn.run_experiment("no-such-experiment")
