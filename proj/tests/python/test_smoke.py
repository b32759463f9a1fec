import math

import pytest

import swarmsim


def test_builtins_listed():
    names = swarmsim.builtin_scenario_names()
    assert "sec41_straight" in names
    assert len(names) == 8


def test_run_is_deterministic():
    a = swarmsim.run_csv("sec41_straight", seed=3)
    b = swarmsim.run_csv("sec41_straight", seed=3)
    assert a == b
    lines = a.splitlines()
    assert lines[0].startswith("t,agent_id,role,")
    assert len(lines) == 1 + 301 * 2


def test_metrics_dict():
    m = swarmsim.run_metrics("sec41_straight", seed=1)
    assert set(m) == {"1"}
    assert m["1"]["settling_time"] is not None
    assert 150 <= m["1"]["median_distance_to_leader"] <= 350


def test_variant_and_errors():
    assert swarmsim.run_metrics("sec51_zonal_vs_tanh_inside", seed=0, variant="tanh")
    with pytest.raises(ValueError):
        swarmsim.run_csv("sec41_straight", variant="pid")
    with pytest.raises(swarmsim.ConfigError):
        swarmsim.scenario_text("name: [unclosed\n")


def test_parse_blobs_broadside():
    el = math.atan(25.0 / 500.0)
    est = swarmsim.parse_blobs([(math.pi / 2, el), (math.pi / 2, -el)])
    assert est is not None
    assert est["distance"] == pytest.approx(500.0, rel=1e-9)
    assert est["heading_valid"] is False
    assert swarmsim.parse_blobs([(0.0, 0.0)]) is None


def test_terminal_speed():
    assert swarmsim.terminal_speed() == pytest.approx(130.0, rel=2e-3)
