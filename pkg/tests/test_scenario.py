import json
from pathlib import Path

import pytest

from fermiwig.scenario import (SUITES, WORKERS_ENV, Scenario, ScenarioError, load_scenario,
                               run_scenario, scenario_from_dict, worker_count)

GOLDEN = Path(__file__).parent / "golden"


def _comparable(report: dict) -> dict:
    """Drop what may legitimately vary: engine version and floating ODE residuals."""
    out = dict(report)
    out.pop("engine")
    out["checks"] = [dict(c, residual="*") if c["suite"] == "h-odes" else c
                     for c in report["checks"]]
    return out


@pytest.mark.parametrize("name,config", [
    ("report_m2.json", {}),
    ("report_m2_laurent.json", {"ring": "laurent-eps"}),
])
def test_golden_reports(name, config):
    report = run_scenario(Scenario(timing=False, workers=1, **config))
    assert report.passed
    golden = json.loads((GOLDEN / name).read_text())
    assert _comparable(report.as_dict()) == _comparable(golden)


def test_reports_are_reproducible_across_workers(monkeypatch):
    monkeypatch.setenv(WORKERS_ENV, "2")
    suites = ["commutators", "named-overlaps", "fourier", "sifting"]
    serial = run_scenario(Scenario(suites=suites, timing=False, workers=1, seed=5)).to_json()
    pooled = run_scenario(Scenario(suites=suites, timing=False, workers=8, seed=5)).to_json()
    assert serial == pooled


def test_seed_changes_random_suites():
    a = run_scenario(Scenario(suites=["sifting"], seed=1, timing=False, workers=1))
    b = run_scenario(Scenario(suites=["sifting"], seed=2, timing=False, workers=1))
    assert a.passed and b.passed
    assert a.scenario["seed"] != b.scenario["seed"]


def test_float_ring_ode_suite():
    report = run_scenario(Scenario(ring="float", suites=["h-odes"], workers=1))
    assert report.passed
    residuals = [float(c.residual) for c in report.checks if c.id.endswith("residual")]
    assert max(residuals) < 1e-10


def test_worker_cap(monkeypatch):
    monkeypatch.setenv(WORKERS_ENV, "3")
    assert worker_count(16, 10) == 3
    assert worker_count(2, 10) == 2
    assert worker_count(16, 1) == 1
    monkeypatch.setenv(WORKERS_ENV, "many")
    with pytest.raises(ScenarioError):
        worker_count(4, 4)


@pytest.mark.parametrize("kwargs,fragment", [
    (dict(spins=3), "supply a custom epsilon"),
    (dict(k_points=7), "memory guard"),
    (dict(suites=["delta-overlaps"]), "laurent-eps"),
    (dict(suites=["no-such-suite"]), "unknown suite"),
    (dict(ring="p-adic"), "unknown ring"),
    (dict(ring="rational", suites=["bogoliubov"]), "needs ring"),
    (dict(k_points=2, spins=1, suites=["bogoliubov"]), "spin pairing"),
    (dict(k_points=3, suites=["star"]), "limited to 2 modes"),
])
def test_config_errors(kwargs, fragment):
    with pytest.raises(ScenarioError, match=fragment):
        Scenario(**kwargs)


def test_default_suites_follow_the_ring():
    assert "delta-overlaps" not in Scenario().suites
    assert Scenario(ring="laurent-eps").suites == ["h-odes", "delta-overlaps"]
    assert Scenario(ring="float").suites == ["h-odes"]
    assert set(Scenario().suites) | {"delta-overlaps"} == set(SUITES)


def test_config_files(tmp_path):
    path = tmp_path / "s.json"
    path.write_text(json.dumps({"modes": {"k_points": 1, "spins": 2}, "suites": ["car"],
                                "seed": 3}))
    sc = load_scenario(path)
    assert sc.suites == ["car"] and sc.seed == 3
    path.write_text("{\"modes\": ")
    with pytest.raises(ScenarioError, match="line 1"):
        load_scenario(path)
    with pytest.raises(ScenarioError, match="unknown config keys"):
        scenario_from_dict({"mode": {}})
    with pytest.raises(ScenarioError):
        load_scenario(tmp_path / "missing.json")


def test_weights_and_epsilon_from_config():
    sc = scenario_from_dict({"modes": {"k_points": 2, "spins": 1, "weights": ["1", "3/2"]},
                             "suites": ["car", "sifting"]})
    assert not sc.modes.unit_weights()
    sc = scenario_from_dict({"modes": {"k_points": 1, "spins": 2,
                                       "epsilon": [["(0,0)", "(0,-1)"], ["(0,1)", "(0,0)"]]},
                             "suites": ["car"]})
    assert sc.modes.has_pairing


def test_report_shape(tmp_path):
    out = tmp_path / "r.json"
    report = run_scenario(Scenario(suites=["car", "majorana"], output=str(out), workers=1))
    data = json.loads(out.read_text())
    assert data["schema"] == "fermiwig.run-report/1"
    assert data["summary"]["failed"] == 0
    assert data["summary"]["checks"] == len(data["checks"])
    for row in data["checks"]:
        assert row["anchor"] and row["status"] in ("pass", "fail")
        assert {"suite", "id", "residual", "seconds"} <= set(row)
    assert report.exit_code == 0


def test_failed_suite_is_reported(monkeypatch):
    import fermiwig.scenario as scen

    def broken(modes, seed):
        raise RuntimeError("boom")

    monkeypatch.setitem(scen.SUITES, "car", scen.Suite("car", broken, ("rational-sqrt2",), False))
    report = run_scenario(Scenario(suites=["car"], workers=1))
    assert report.exit_code == 1
    assert report.failures[0].detail == "boom"
